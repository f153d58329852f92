from gensearch.session.events import SEARCH_KINDS, SessionEvent, event_from_dict
from gensearch.session.log import SessionStore
from gensearch.session.patterns import PatternReport, Transition, pattern_report, transitions

__all__ = [
    "SessionEvent",
    "SEARCH_KINDS",
    "event_from_dict",
    "SessionStore",
    "Transition",
    "transitions",
    "PatternReport",
    "pattern_report",
]
