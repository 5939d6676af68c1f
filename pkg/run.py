# %%
import os
import subprocess
import sys

import pandas as pd
import yaml

# %%
config_env = os.path.join('configs', 'env.yml')
with open(config_env, 'r') as stream:
    root_dir = yaml.safe_load(stream)['root_dir']

verify_dir = os.path.join('configs', 'verify')
file_list = sorted(f for f in os.listdir(verify_dir) if f.endswith('.yml'))
print(file_list)

failed = []
for filename in file_list:
    print(filename)

    # Run the check; a failing check exits 1 and is collected, not fatal
    result = subprocess.run([
        sys.executable, 'possnet.py', 'verify',
        '--config_env', config_env,
        '--config_exp', os.path.join(verify_dir, filename),
    ])
    if result.returncode not in (0, 1):
        result.check_returncode()
    if result.returncode == 1:
        failed.append(filename)

# %%
reports = []
for filename in file_list:
    report_csv = os.path.join(root_dir, os.path.splitext(filename)[0], 'report.csv')
    if os.path.exists(report_csv):
        reports.append(pd.read_csv(report_csv))

if reports:
    summary = pd.concat(reports, ignore_index=True)
    summary.to_csv(os.path.join(root_dir, 'summary.csv'), index=False)
    print(summary.to_string(index=False))

if failed:
    print('Failed: {}'.format(', '.join(failed)))
    sys.exit(1)
