#   ┌─┐┬ ┬┌─┐┌┬┐┌┐ ┌─┐┬─┐┌─┐┬  ┌─┐┬ ┬
#   │  ├─┤├─┤│││├┴┐├┤ ├┬┘├┤ │  │ ││││
#   └─┘┴ ┴┴ ┴┴ ┴└─┘└─┘┴└─└  ┴─┘└─┘└┴┘
#
#                                    🔒 Licensed under the CC-by-NC
#                                 https://creativecommons.org/licenses/by-nc/4.0/

import itertools

import numpy as np

from ._common import ACTION_ARGS, RUN_ARGS, num, point_text, resolve, run_config, save
from .. import loader, utils
from ..flow import CollapseEvent, FixedPoint, FlowOptions, backward_trace, cascade, integrate, minimal_point
from ..validators import Float, ValidationError


@loader.module(name="flow", author="chamberflow")
class FlowMod(loader.Module):
    """Flow runs, cascades, minimal points and reverse flows"""

    def summary(self, termination):
        if isinstance(termination, CollapseEvent):
            return self.out(
                "collapse",
                T_est=num(termination.T_est),
                limit=point_text(termination.limit),
                type_I_est=num(termination.type_I_est),
                type_I_theory=num(termination.type_I_theory),
            )

        if isinstance(termination, FixedPoint):
            return self.out(
                "fixed_point",
                point=point_text(termination.point),
                t=num(termination.t),
                x_norm=num(termination.x_norm),
            )

        return self.out(
            "timeout",
            point=point_text(termination.point),
            t=num(termination.t),
            reason=termination.reason,
        )

    def written(self, path, count):
        if path:
            self.out("written", count=count, path=path)

    @loader.command("Integrate the flow from --start until it collapses or stops", *RUN_ARGS)
    def flow_cmd(self, args):
        config = run_config(args)
        _, cham = resolve(config)
        start = config.validate(cham)

        trajectory, termination = integrate(
            cham, start, FlowOptions.build(config.options), strict=not config.lenient_strata
        )

        count = save(config.out, itertools.chain(trajectory.to_records(), [termination.to_record()]))
        self.summary(termination)
        self.written(config.out, count)

    @loader.command("Follow the flow through every collapse until it stops", *RUN_ARGS)
    def cascade_cmd(self, args):
        config = run_config(args)
        _, cham = resolve(config)
        start = config.validate(cham)

        result = cascade(cham, start, FlowOptions.build(config.options), strict=not config.lenient_strata)

        records = []
        for trajectory, termination in result.segments:
            records.extend(trajectory.to_records())
            records.append(termination.to_record())

        count = save(config.out, records)

        self.out("cascade", count=len(result), name=cham.name)
        for index, event in enumerate(result, 1):
            self.out(
                "event",
                index=index,
                stratum=event.stratum.describe(),
                T_est=num(event.T_est),
                limit=point_text(event.limit),
            )

        self.summary(result.terminal)
        self.written(config.out, count)

    @loader.command(
        "Minimal point of the potential",
        *ACTION_ARGS,
        loader.arg("--start", help="Newton start point"),
        loader.arg("--multistart", type=int, help="random restarts that must agree"),
        loader.arg("--seed", type=int),
        loader.arg("--out"),
    )
    def minimal_cmd(self, args):
        config = run_config(args)
        _, cham = resolve(config)
        start = config.validate(cham) if config.start is not None else None

        point = minimal_point(
            cham,
            start=start,
            multistart=args.multistart,
            rng=utils.make_rng(config.seed),
        )

        save(config.out, [{"event": "minimal_point", "point": list(point)}])
        self.out("minimal", point=utils.format_point(point))

    @loader.command(
        "Reverse flows from points just inside a facet point given by --start",
        *RUN_ARGS,
        loader.arg("--deltas", default="1e-3,1e-4", help="distances from the facet, comma separated"),
    )
    def backtrace_cmd(self, args):
        config = run_config(args)
        _, cham = resolve(config)
        if config.start is None:
            raise ValidationError(self.strings("facet"))

        deltas = [Float(positive=True).type(part) for part in args.deltas.split(",") if part.strip()]
        trajectories = backward_trace(cham, config.start, deltas, FlowOptions.build(config.options))
        target = minimal_point(cham, rng=utils.make_rng(config.seed))

        ends = []
        for delta, trajectory in zip(deltas, trajectories):
            end = trajectory.last.y
            ends.append(end)
            self.out(
                "backtrace",
                delta=num(delta),
                point=point_text(end),
                distance=num(float(np.linalg.norm(end - target))),
            )

        spread = max(
            (float(np.linalg.norm(a - b)) for a, b in itertools.combinations(ends, 2)),
            default=0.0,
        )
        self.out("spread", spread=num(spread))

        records = [
            dict(record, delta=delta)
            for delta, trajectory in zip(deltas, trajectories)
            for record in trajectory.to_records()
        ]
        self.written(config.out, save(config.out, records))
