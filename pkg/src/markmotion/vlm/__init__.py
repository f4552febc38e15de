"""Model query transport: content model, scripted stand-in, and HTTP client."""

from .client import (
    MAX_IMAGE_LONG_SIDE_PX,
    build_request_body,
    downscale_for_wire,
    encode_image_data_url,
    query,
)
from .messages import (
    ImagePart,
    Message,
    Part,
    PromptSequence,
    TextPart,
    VlmConfig,
    image_parts,
    message_texts,
    text_of,
    user_message,
)
from .oracle import OracleRule, OracleScript, load_packaged_script, oracle_query

__all__ = [
    "MAX_IMAGE_LONG_SIDE_PX",
    "build_request_body",
    "downscale_for_wire",
    "encode_image_data_url",
    "query",
    "ImagePart",
    "Message",
    "Part",
    "PromptSequence",
    "TextPart",
    "VlmConfig",
    "image_parts",
    "message_texts",
    "text_of",
    "user_message",
    "OracleRule",
    "OracleScript",
    "load_packaged_script",
    "oracle_query",
]
