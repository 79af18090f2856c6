from .ops import (
    back_translate,
    build_feedback_prompt,
    convert_plan,
    generate_from_prompt,
    generate_plans,
    judge_plan,
    parse_plan_blocks,
    translate_constraint,
    wrap_property,
)
from .provider import (
    FixtureProvider,
    FixtureStore,
    LiveProvider,
    Message,
    Provider,
    ProviderRequest,
    ProviderResponse,
    RecordingProvider,
    ScriptedProvider,
    user_request,
)

__all__ = [
    "FixtureProvider",
    "FixtureStore",
    "LiveProvider",
    "Message",
    "Provider",
    "ProviderRequest",
    "ProviderResponse",
    "RecordingProvider",
    "ScriptedProvider",
    "back_translate",
    "build_feedback_prompt",
    "convert_plan",
    "generate_from_prompt",
    "generate_plans",
    "judge_plan",
    "parse_plan_blocks",
    "translate_constraint",
    "user_request",
    "wrap_property",
]
