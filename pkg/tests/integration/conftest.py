import logging
import shutil
from pathlib import Path

import pytest

OUTPUT_DIRS = ("logs", "artifacts")


@pytest.fixture(scope="session", autouse=True)
def reset_report_directories():
    """
    セッション開始時に失敗ログとレポート JSON の出力先を作り直す。
    """
    base_dir = Path(__file__).parent
    for name in OUTPUT_DIRS:
        target = base_dir / name
        if target.exists():
            shutil.rmtree(target)
        target.mkdir(exist_ok=True)


@pytest.fixture(autouse=True)
def nvee_debug_logging(caplog):
    """
    フェーズごとのログ（Starting Phase N ...）を失敗時の出力に残す。
    """
    caplog.set_level(logging.DEBUG, logger="nvee")
    yield caplog
