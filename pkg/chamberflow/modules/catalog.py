#   ┌─┐┬ ┬┌─┐┌┬┐┌┐ ┌─┐┬─┐┌─┐┬  ┌─┐┬ ┬
#   │  ├─┤├─┤│││├┴┐├┤ ├┬┘├┤ │  │ ││││
#   └─┘┴ ┴┴ ┴┴ ┴└─┘└─┘┴└─└  ┴─┘└─┘└┴┘
#
#                                    🔒 Licensed under the CC-by-NC
#                                 https://creativecommons.org/licenses/by-nc/4.0/

from .. import loader, utils
from ..rootsys import catalog, chamber, facets, get, vertices
from ..validators import ValidationError


def _params(spec) -> str:
    if not spec.params:
        return ""

    values = spec.param_values
    return " params=" + ",".join(
        f"{key}={values[key]}" if key in values else key for key in spec.params
    )


@loader.module(name="catalog", author="chamberflow")
class CatalogMod(loader.Module):
    """Browse the rank-2 actions"""

    @loader.command(
        "List catalog rows or show one of them",
        loader.arg("what", choices=["list", "show"]),
        loader.arg("name", nargs="?", help="row name or label, for show"),
        loader.arg("--q", type=int),
        loader.arg("--j", type=int),
    )
    def catalog_cmd(self, args):
        if args.what == "list":
            return self.list_rows()

        if not args.name:
            raise ValidationError(self.strings("show"))

        params = {key: getattr(args, key) for key in ("q", "j") if getattr(args, key) is not None}
        return self.show_row(get(args.name, **params))

    def list_rows(self):
        rows = catalog()
        for spec in rows:
            count = len(spec.roots) if spec.is_concrete else len(spec.templates)
            self.out(
                "row",
                name=spec.name,
                cartan=spec.cartan,
                rank=spec.rank,
                roots=count,
                params=_params(spec),
            )

        self.out("total", count=len(rows))

    def show_row(self, spec):
        cham = chamber(spec)

        self.out("title", name=spec.name, label=spec.label)
        self.out("cartan", cartan=spec.cartan, rank=spec.rank, params=_params(spec))

        self.out("roots", count=len(spec.roots))
        for root in spec.roots:
            self.out(
                "root",
                label=root.label,
                vector=utils.format_point(root.vector, fixed=False),
                m_V=root.m_V,
                m_H=root.m_H,
            )

        self.out("constraints", count=len(cham.constraints))
        for constraint in cham.constraints:
            self.out("constraint", text=constraint.describe())

        self.out(
            "reference",
            reference=utils.format_point(cham.reference_point, fixed=False),
            radius=utils.fmt(cham.radius),
        )
        self.out("strata", facets=len(facets(cham)), vertices=len(vertices(cham)))

        for key in ("dual", "slice"):
            if key in spec.metadata:
                self.out(key, **{key: spec.metadata[key]})

        for note in spec.notes:
            self.out("note", note=note)
