"""Turn a dataclass of defaults into command-line overrides."""
import argparse
import dataclasses


def parse_config(cls, description=""):
    p = argparse.ArgumentParser(description=description)
    for f in dataclasses.fields(cls):
        default = f.default
        if isinstance(default, bool):
            p.add_argument(f"--{f.name.replace('_', '-')}", action=argparse.BooleanOptionalAction, default=default)
        elif isinstance(default, tuple):
            p.add_argument(f"--{f.name.replace('_', '-')}", default=default,
                           type=lambda s, t=type(default[0]): tuple(t(x) for x in s.split(",")))
        else:
            p.add_argument(f"--{f.name.replace('_', '-')}", type=type(default), default=default)
    return cls(**vars(p.parse_args()))
