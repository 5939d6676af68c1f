import os
import yaml
from easydict import EasyDict
from utils.utils import mkdir_if_missing

TOOL_DEFAULTS = {'max_vars': 20, 'log_level': 'INFO', 'workers': 1}


def load_tool_config(config_file=None):
    """ Tool defaults, overridden by configs/possnet.yml when it exists """
    cfg = EasyDict(TOOL_DEFAULTS)
    if config_file is not None and os.path.exists(config_file):
        with open(config_file, 'r') as stream:
            cfg.update(yaml.safe_load(stream) or {})
    return cfg


def create_config(config_file_env, config_file_exp, fname=None):
    # Config for environment path
    with open(config_file_env, 'r') as stream:
        root_dir = yaml.safe_load(stream)['root_dir']

    with open(config_file_exp, 'r') as stream:
        config = yaml.safe_load(stream)

    cfg = EasyDict()

    # Copy
    for k, v in config.items():
        cfg[k] = v

    if 'check' not in cfg:
        raise ValueError('Invalid experiment config {}: no check given'.format(config_file_exp))
    if fname is None:
        fname = os.path.splitext(os.path.basename(config_file_exp))[0]
    # EasyDict does not override setdefault, so set through __setitem__ to keep attribute access in sync
    for k, v in (('trials', 100), ('seed', 0), ('workers', 1), ('generator_kwargs', {})):
        if k not in cfg:
            cfg[k] = v

    # Set paths for the report of this experiment
    report_dir = os.path.join(root_dir, fname)
    failures_dir = os.path.join(report_dir, 'failures')
    log_dir = os.path.join(report_dir, 'logs')
    mkdir_if_missing(report_dir)
    mkdir_if_missing(failures_dir)
    cfg['fname'] = fname
    cfg['root_dir'] = root_dir
    cfg['report_dir'] = report_dir
    cfg['failures_dir'] = failures_dir
    cfg['log_dir'] = log_dir
    cfg['report_csv'] = os.path.join(report_dir, 'report.csv')
    cfg['summary_csv'] = os.path.join(root_dir, 'summary.csv')

    return cfg
