import numpy as np

from ._common import num, point_text, run_config, save, resolve
from .. import loader, utils
from ..meanfield import (
    lift_family,
    lift_principal_curvatures,
    lifted_spectrum_arctan,
    orbit_shape_spectrum,
    regularized_trace,
    spectrum_trace,
    vector_field_X,
)
from ..validators import ValidationError


@loader.module(name="spectrum", author="chamberflow")
class SpectrumMod(loader.Module):
    """Shape operator spectra of an orbit and of its lift"""

    @loader.command(
        "Print the orbit and lifted spectra at --start",
        loader.arg("--action", help="catalog row name or label"),
        loader.arg("--q", type=int),
        loader.arg("--j", type=int),
        loader.arg("--start", help="point x1,x2 in chamber coordinates"),
        loader.arg("--direction", help="normal direction v, defaults to the first axis"),
        loader.arg("--J", dest="J", type=int, default=100, help="truncation of the lifted spectrum"),
        loader.arg("--arctan", help="lam,mu of the arctan model spectrum"),
        loader.arg("--K", dest="K", type=int, default=1000),
        loader.arg("--out"),
    )
    def spectrum_cmd(self, args):
        if not args.action and not args.arctan:
            raise ValidationError(self.strings("missing"))

        records = []
        if args.action:
            records.extend(self.orbit(args))

        if args.arctan:
            lam, mu = utils.parse_point(args.arctan, dim=2)
            model = lifted_spectrum_arctan(lam, mu, args.K)
            self.out("arctan", lam=num(lam), mu=num(mu), count=len(model.values), sup_norm=num(model.sup_norm))
            records.append({"arctan": [lam, mu], "K": args.K, "sup_norm": model.sup_norm})

        save(args.out, records)

    def orbit(self, args):
        config = run_config(args)
        _, cham = resolve(config)
        point = np.asarray(config.validate(cham))

        if args.direction:
            direction = np.asarray(utils.parse_point(args.direction, dim=cham.rank))
        else:
            direction = np.eye(cham.rank)[0]
        direction = direction / np.linalg.norm(direction)

        entries = orbit_shape_spectrum(cham, point, direction)
        self.out("orbit", point=point_text(point), direction=point_text(direction))
        for entry in entries:
            self.out(
                "entry",
                block=entry.block,
                label=entry.label,
                eigenvalue=num(entry.eigenvalue),
                multiplicity=entry.multiplicity,
            )

        self.out(
            "trace",
            trace=num(spectrum_trace(entries)),
            inner=num(float(vector_field_X(cham, point) @ direction)),
        )

        family = lift_family(cham, point)
        self.out("lift", point=point_text(point))
        for entry in family:
            self.out(
                "lifted",
                label=entry.label,
                lam=point_text(entry.lam),
                b=num(entry.b),
                m_e=entry.m_e,
                m_o=entry.m_o,
            )

        origin = np.zeros(cham.rank)
        trace = regularized_trace(family, origin, direction, args.J)
        curvatures = lift_principal_curvatures(family, origin, direction, args.J)
        self.out(
            "regularized",
            J=args.J,
            partial=num(trace.partial),
            closed=num(trace.closed),
            error=num(trace.error),
        )
        self.out("curvatures", count=len(curvatures), J=args.J)

        records = [
            {
                "block": entry.block,
                "label": entry.label,
                "eigenvalue": entry.eigenvalue,
                "multiplicity": entry.multiplicity,
            }
            for entry in entries
        ]
        records.append({"J": args.J, "partial": trace.partial, "closed": trace.closed})
        return records
