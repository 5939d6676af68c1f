import logging
import os
import sys
from datetime import datetime

from utils.utils import mkdir_if_missing

LOG_FORMAT = '%(asctime)s [%(levelname)s] %(name)s: %(message)s'


def init_logging(log_dir=None, prefix='possnet', level='INFO'):
    """
    Configure the root logger: a stderr stream handler and, when log_dir is
    given, a timestamped log file next to the experiment results.

    :param log_dir: directory for the log file, or None for console only
    :param prefix: log file name prefix
    :param level: logging level name or number
    :return: the root logger
    """
    root = logging.getLogger()
    root.setLevel(level if isinstance(level, int) else getattr(logging, str(level).upper()))
    for handler in list(root.handlers):
        root.removeHandler(handler)
        handler.close()

    stream = logging.StreamHandler(sys.stderr)
    stream.setFormatter(logging.Formatter('%(levelname)s: %(message)s'))
    root.addHandler(stream)

    if log_dir is not None:
        mkdir_if_missing(log_dir)
        fname = '{}_{}.log'.format(prefix, datetime.now().strftime('%Y%m%d-%H%M%S'))
        file_handler = logging.FileHandler(os.path.join(log_dir, fname))
        file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
        root.addHandler(file_handler)

    return root
