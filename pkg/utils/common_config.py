from verifier.generators import GeneratorConfig


def get_check(p):
    name = p if isinstance(p, str) else p['check']
    from verifier.checks import TRIALS
    if name not in TRIALS:
        raise ValueError('Invalid check {}'.format(name))
    return TRIALS[name]


def get_generator_config(p):
    kwargs = dict(p.get('generator_kwargs') or {})
    unknown = set(kwargs) - set(GeneratorConfig.__dataclass_fields__)
    if unknown:
        raise ValueError('Invalid generator kwargs {}'.format(', '.join(sorted(unknown))))
    return GeneratorConfig(seed=int(p['seed']), **kwargs)


def get_ordering(names, variables):
    """ Variables in the order of a comma separated name list; None keeps index order """
    if names is None:
        return None
    by_name = {v.name: v for v in variables}
    order = [n.strip() for n in names.split(',') if n.strip()]
    missing = [v.name for v in variables if v.name not in order]
    unknown = [n for n in order if n not in by_name]
    if unknown or missing or len(order) != len(set(order)):
        raise ValueError('Invalid ordering {}: expected each of {} once'.format(
            names, ', '.join(v.name for v in variables)))
    return tuple(by_name[n] for n in order)
