import logging
from functools import lru_cache
from typing import List, Optional

from sqlmodel import Session, SQLModel, col, create_engine, select, text

from supcomp.config import database_echo, database_url
from supcomp.models import SuiteReport, SuiteRun

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def _engine(url: str):
    return create_engine(url, echo=database_echo())


def get_engine(url: Optional[str] = None):
    return _engine(url or database_url())


def get_session(url: Optional[str] = None) -> Session:
    return Session(get_engine(url))


def init_db(url: Optional[str] = None) -> None:
    engine = get_engine(url)
    SQLModel.metadata.create_all(engine)
    _run_migrations(engine)


def _run_migrations(engine) -> None:
    """Bring ledgers written by older versions up to the current columns."""
    with Session(engine) as session:
        columns = {row[1] for row in session.exec(text("PRAGMA table_info(suiterun)")).all()}
        if "report_path" not in columns:
            logger.info("adding report_path column to suiterun")
            session.exec(text("ALTER TABLE suiterun ADD COLUMN report_path TEXT"))
            session.commit()


def record_run(report: SuiteReport, report_path: Optional[str] = None, url: Optional[str] = None) -> SuiteRun:
    init_db(url)
    run = SuiteRun(
        suite=report.suite,
        trials=report.trials,
        seed=report.seed,
        backend=report.backend,
        mutation=report.mutation,
        passed=report.passed,
        failures=report.failures,
        report_path=report_path,
    )
    with get_session(url) as session:
        session.add(run)
        session.commit()
        session.refresh(run)
    logger.info("recorded run %s of suite %s", run.id, run.suite)
    return run


def list_runs(limit: int = 20, suite: Optional[str] = None, url: Optional[str] = None) -> List[SuiteRun]:
    init_db(url)
    stmt = select(SuiteRun)
    if suite:
        stmt = stmt.where(SuiteRun.suite == suite)
    stmt = stmt.order_by(col(SuiteRun.id).desc()).limit(limit)
    with get_session(url) as session:
        return list(session.exec(stmt).all())
