"""Reduce the bigon module at a few character points and count dimensions.

A character point assigns rational values to the four single-chord
diagrams; only assignments that extend multiplicatively to the whole
classical algebra are accepted.  The reduction certificate records the
degree levels processed and where the relation sweep stalled.
"""

from skeinpoly.polydiag import BIGON, MONOGON
from skeinpoly.reduced import (
    bigon_point,
    reduced_dim,
    reduced_presentation,
    trivial_point,
    validate_character,
)

POINTS = {
    "identity": bigon_point(1, 0, 0, 1),
    "diagonal": bigon_point(2, 0, 0, "1/2"),
    "unipotent": bigon_point(1, 1, 0, 1),
    "generic": bigon_point(2, 3, 1, 2),
}


def main():
    print("monogon collapses to scalars:")
    for N in (3, 5):
        pres = reduced_presentation(MONOGON, trivial_point(MONOGON), N)
        print("  N=%d  dim = %d" % (N, reduced_dim(pres)))
    print()

    bad = bigon_point(1, 1, 1, 1)
    report = validate_character(bad)
    print("values (1,1,1,1) are a character:", report["ok"])
    print()

    for name, rho in POINTS.items():
        pres = reduced_presentation(BIGON, rho, 3)
        cert = pres.certificate
        print(
            "%-10s dim %3d  levels swept %d  stalled at %s"
            % (name, reduced_dim(pres), len(cert["levels"]), cert["stalled_at"])
        )
    print()
    print("expected N^3 = 27 at every point")


if __name__ == "__main__":
    main()
