"""Chat prompt templates for query concretization and keyword suggestion.

Rendering is pure string assembly and byte-stable across runs and platforms:
the suggestion contracts downstream (five queries, five aligned plus five
diversified terms) are only as reliable as the exact wording here, so the
templates are frozen constants and golden-file tested.
"""

from __future__ import annotations

from dataclasses import dataclass

from gensearch.errors import MissingBinding

SYSTEM_PROMPT = (
    "You are a helpful and creative assistant that can suggest effective search queries "
    "to find new and inspiring designs. You return your final answer as a valid JSON object."
)

_CONCRETIZE_PROMPT1 = (
    "We would like to request you to ideate search queries to help designers explore and "
    "find useful reference images. The designer has now entered one text query into the "
    "image search system. However, there is currently an unspecified part of this query. "
    "If the designer looks for search results with this query, he/she can get too many "
    "different search results, so the designer wants to be recommended a more specific "
    "search query in the query they enter. These are described below."
)

_CONCRETIZE_PROMPT2 = (
    "Please suggest five search queries by following the steps. First, explain the "
    "non-specific parts of the current search query and how to specify them. Second, "
    "complete the current search query by adding more details to the end regarding color, "
    "shape, style, etc. Please add at least three words. Avoid changing the entire meaning "
    "of the query, but focus on specifying the unspecified parts in various aspects.\n"
    "\n"
    "Return your output as a valid JSON object of the following format:\n"
    '{"explanation":\n'
    "<explain how you generate the specified queries in the first and second steps>,\n"
    '"search_queries":\n'
    "[<list of five suggested queries that designer can use>]}"
)

_KEYWORDS_PROMPT1 = (
    "We would like to request you to ideate search terms to help designers explore and "
    "find useful reference images. The designer is currently looking at an image. They "
    "are trying to think about new search terms that can help them find images that are "
    "similar but more inspiring than the current image. The designer has already tried "
    "various search queries that were unsuccessful in the past and saved a couple of "
    "images to their profile. These are described below."
)

_KEYWORDS_PROMPT2 = (
    "Please suggest several search terms or words. Consider the current image, the "
    "previous search history, and the saved images to predict what the designer's "
    "intentions may be. You should imagine what type of design the designer is working "
    "on and what type of reference images they may be looking for. If the [Search Query "
    "History] and [Descriptions of Saved Images] are empty, just refer only to the "
    "[Description of Current Image] to predict the designer's intent. Provide a "
    "comprehensive explanation about what you imagine the designer's intention to be "
    "and the type of reference images that may satisfy or diversify this intent.\n"
    "\n"
    "Then, suggest search terms that can help satisfy the designer's intent. You should "
    "suggest search terms that designers can add to their search queries to look for "
    "images that satisfy their intentions. As an alternative, also suggest terms that "
    "can help diversity the designer's intent. These search terms should be different "
    "from the designers current intent and should help them explore other, different "
    "types of designs. When suggesting search terms, you should avoid suggesting search "
    "terms that are already included in the current image, the search history, or the "
    "descriptions of saved images. Ensure that your suggested terms are completely new "
    "to the designer. Ensure that you only suggest words and avoid suggesting phrases.\n"
    "\n"
    "Return your output as a valid JSON object of the following format:\n"
    '{"explanation":\n'
    "<explain how you generate the specified queries in the first and second steps>,\n"
    '"aligned_search_terms":\n'
    "[<list of five suggested words that align with the designer's current intentions>],\n"
    '"diversified_search_terms":\n'
    "[<list of five suggested words that differ from the designer's current intentions>]}"
)

# Placeholder name -> section header line, in template order.
_TEMPLATE_SECTIONS: dict[str, list[tuple[str, str]]] = {
    "concretize": [("curr_query", "[Current Search Query]")],
    "keywords": [
        ("curr_image", "[Description of Current Image]"),
        ("search_history", "[Search Query History]"),
        ("saved_images", "[Descriptions of Saved Images]"),
    ],
}

_TEMPLATE_PROMPTS = {
    "concretize": (_CONCRETIZE_PROMPT1, _CONCRETIZE_PROMPT2),
    "keywords": (_KEYWORDS_PROMPT1, _KEYWORDS_PROMPT2),
}


@dataclass(frozen=True)
class PromptBundle:
    system_prompt: str
    user_prompt: str
    template_id: str


def render_template(template_id: str, bindings: dict[str, str | list[str]]) -> PromptBundle:
    """Substitute bindings into a template.

    Every placeholder must be bound; an empty string (or empty list) is a
    valid binding and leaves the section header with an empty body. List
    values render one item per line.
    """
    if template_id not in _TEMPLATE_SECTIONS:
        raise KeyError(f"unknown template {template_id!r}")
    prompt1, prompt2 = _TEMPLATE_PROMPTS[template_id]
    lines = [prompt1, ""]
    for name, header in _TEMPLATE_SECTIONS[template_id]:
        if name not in bindings:
            raise MissingBinding(name)
        value = bindings[name]
        if isinstance(value, (list, tuple)):
            value = "\n".join(str(item) for item in value)
        lines.append(header)
        lines.append(str(value))
    lines.append("")
    lines.append(prompt2)
    return PromptBundle(
        system_prompt=SYSTEM_PROMPT,
        user_prompt="\n".join(lines),
        template_id=template_id,
    )


# JSON response contracts for the two templates. The query suggestion answer
# carries exactly five queries; the keyword answer carries exactly five
# aligned and five diversified terms.
CONCRETIZE_SCHEMA = {
    "type": "object",
    "properties": {
        "explanation": {"type": "string"},
        "search_queries": {
            "type": "array",
            "items": {"type": "string"},
            "minItems": 5,
            "maxItems": 5,
        },
    },
    "required": ["explanation", "search_queries"],
}

KEYWORDS_SCHEMA = {
    "type": "object",
    "properties": {
        "explanation": {"type": "string"},
        "aligned_search_terms": {
            "type": "array",
            "items": {"type": "string"},
            "minItems": 5,
            "maxItems": 5,
        },
        "diversified_search_terms": {
            "type": "array",
            "items": {"type": "string"},
            "minItems": 5,
            "maxItems": 5,
        },
    },
    "required": ["explanation", "aligned_search_terms", "diversified_search_terms"],
}
