"""
Database Configuration
Core SQLAlchemy setup for the comparison run history
"""

from pathlib import Path
from typing import Union
import logging

from sqlalchemy import create_engine
from sqlalchemy.orm import declarative_base, sessionmaker

logger = logging.getLogger(__name__)

# Default location; the CLI --db flag rebinds it through configure()
DB_PATH = Path(__file__).parent.parent / "data" / "tempcorr_runs.db"

DATABASE_URL = f"sqlite:///{DB_PATH}"
engine = create_engine(DATABASE_URL, echo=False)

Base = declarative_base()
SessionLocal = sessionmaker(autocommit=False, autoflush=False, bind=engine)


def init_db():
    """
    Initialize database: creates all tables if they don't exist.
    Safe to call multiple times - only creates missing tables.
    """
    Path(engine.url.database).parent.mkdir(parents=True, exist_ok=True)
    Base.metadata.create_all(bind=engine)


def configure(db_path: Union[str, Path]):
    """
    Point the engine and session factory at another SQLite file

    Args:
        db_path: Path of the database file (created if missing)
    """
    global engine, DB_PATH, DATABASE_URL
    DB_PATH = Path(db_path)
    DATABASE_URL = f"sqlite:///{DB_PATH}"
    engine.dispose()
    engine = create_engine(DATABASE_URL, echo=False)
    SessionLocal.configure(bind=engine)
    init_db()
    logger.debug(f"[DB] Using {DB_PATH}")
