from concurrent.futures import ProcessPoolExecutor


def _call(packed):
    fn, args = packed
    return fn(*args)


def map_trials(fn, arglist, jobs: int = 1) -> list:
    """``[fn(*args) for args in arglist]``, optionally in worker processes, order kept."""
    if jobs <= 1 or len(arglist) < 2:
        return [fn(*args) for args in arglist]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_call, [(fn, a) for a in arglist], chunksize=max(1, len(arglist) // (4 * jobs))))
