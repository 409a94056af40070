import logging
import os
from datetime import datetime
from typing import Optional

import colorlog

COMPONENTS = ("Mesh", "Basis", "DGKernels", "Adaptivity", "TimeLoop", "Executor", "Scheduler", "Runner")

CONSOLE_FORMAT = "%(log_color)s[%(levelname)s]%(reset)s %(message)s"
# lane 스레드 (lane-A_0 / lane-B_0) 를 구분하기 위해 threadName 포함
FILE_FORMAT = "[%(asctime)s] [%(levelname)s] [%(name)s] [%(threadName)s] %(message)s"


def setup_logger(name: str = "dg_solver", log_dir: Optional[str] = "logs", level: int = logging.INFO) -> logging.Logger:
    """
    콘솔 (colorlog) + 일자별 파일 핸들러

    :param log_dir: None 이면 파일 핸들러를 붙이지 않는다
    """
    logger = logging.getLogger(name)
    logger.setLevel(level)
    if logger.handlers:
        return logger

    console = colorlog.StreamHandler()
    console.setFormatter(colorlog.ColoredFormatter(CONSOLE_FORMAT))
    logger.addHandler(console)

    if log_dir is not None:
        os.makedirs(log_dir, exist_ok=True)
        path = os.path.join(log_dir, f"{datetime.now():%Y-%m-%d}.log")
        file_handler = logging.FileHandler(path, encoding="utf-8")
        file_handler.setFormatter(logging.Formatter(FILE_FORMAT))
        logger.addHandler(file_handler)
    return logger


def setup_component_loggers(level: int = logging.INFO, log_dir: Optional[str] = "logs") -> logging.Logger:
    """solver 컴포넌트 로거들은 루트 로거 핸들러를 공유하고 레벨만 따로 맞춘다"""
    root = setup_logger(name="", log_dir=log_dir, level=level)
    for name in COMPONENTS:
        logging.getLogger(name).setLevel(level)
    return root
