import logging
import uuid
from datetime import datetime, timezone

logger = logging.getLogger("qfridge.events")


def log_event(event_type: str, description: str, level: int = logging.INFO, **fields) -> str:
    eid = f"EVT-{uuid.uuid4().hex[:12]}"
    logger.log(
        level,
        "%s %s",
        event_type,
        description,
        extra={
            "event_id": eid,
            "event_type": event_type,
            "event_date": datetime.now(timezone.utc).isoformat(),
            "fields": fields,
        },
    )
    return eid
