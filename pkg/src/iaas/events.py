"""Event channels of IaaS services."""

from dataclasses import dataclass, field
from typing import Any, Callable

KINDS = ("vm-state", "capacity-change", "queue-change", "allocation-release")


@dataclass(frozen=True)
class Event:

    """A notification, sent synchronously to the subscribed handlers."""

    kind: str
    tick: int
    subject: Any
    data: dict[str, Any] = field(default_factory=dict)


class EventSubscription:

    """A handler subscribed to a kind of event."""

    def __init__(self, channels: "EventChannels", kind: str, handler):
        self.channels = channels
        self.kind = kind
        self.handler = handler

    def __repr__(self):
        return f"<EventSubscription {self.kind} {self.handler!r}>"

    def cancel(self) -> bool:
        """Stop receiving events, return whether it was subscribed."""
        handlers = self.channels.handlers[self.kind]
        if self in handlers:
            handlers.remove(self)
            return True

        return False


class EventChannels:

    """Handlers of a service, by kind of event."""

    def __init__(self, clock):
        self.clock = clock
        self.handlers: dict[str, list[EventSubscription]] = {
            kind: [] for kind in KINDS
        }

    def subscribe(
        self, kind: str, handler: Callable[[Event], object]
    ) -> EventSubscription:
        """Subscribe a handler to a kind of event.

        Raises:
            ValueError: the kind doesn't exist.

        """
        if kind not in self.handlers:
            raise ValueError(
                f"unknown event kind {kind!r}, expected one of "
                f"{', '.join(KINDS)}"
            )

        subscription = EventSubscription(self, kind, handler)
        self.handlers[kind].append(subscription)
        return subscription

    def emit(self, kind: str, subject: Any, **data) -> None:
        """Send an event to the handlers of its kind."""
        if handlers := self.handlers[kind]:
            event = Event(kind, self.clock.current_tick, subject, data)
            for subscription in tuple(handlers):
                subscription.handler(event)
