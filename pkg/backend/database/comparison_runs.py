"""
Comparison Run Models
Saved analytic-versus-simulation reports
"""

from datetime import datetime, timezone

from sqlalchemy import Column, DateTime, Float, ForeignKey, Integer, String, Text
from sqlalchemy.orm import relationship

from .config import Base


class ComparisonRun(Base):
    """One executed check (compare subcommand)"""
    __tablename__ = "comparison_runs"

    id = Column(Integer, primary_key=True, index=True)
    run_date = Column(DateTime, nullable=False, index=True)
    upload_date = Column(DateTime, default=lambda: datetime.now(timezone.utc), nullable=False)
    check_name = Column(String, nullable=False, index=True)
    seed = Column(Integer, nullable=True)
    n_realizations = Column(Integer, nullable=True)
    overall_result = Column(String, nullable=False)
    parameters = Column(Text, nullable=True)  # JSON of the check inputs
    notes = Column(Text, nullable=True)

    results = relationship("ComparisonResult", back_populates="run", cascade="all, delete-orphan")


class ComparisonResult(Base):
    """One compared quantity of a run"""
    __tablename__ = "comparison_results"

    id = Column(Integer, primary_key=True, index=True)
    run_id = Column(Integer, ForeignKey('comparison_runs.id'), nullable=False)
    quantity = Column(String, nullable=False)
    status = Column(String, nullable=False)
    value = Column(Float, nullable=True)
    analytic = Column(Float, nullable=True)
    std_error = Column(Float, nullable=True)
    ci_lo = Column(Float, nullable=True)
    ci_hi = Column(Float, nullable=True)
    z_score = Column(Float, nullable=True)

    run = relationship("ComparisonRun", back_populates="results")
