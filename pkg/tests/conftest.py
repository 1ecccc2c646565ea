import pytest

from hypspectra.bound import bound_report
from hypspectra.cover import cyclic_cover
from hypspectra.eigen import solve_smallest
from hypspectra.fem import assemble, refine
from hypspectra.surface import FenchelNielsenSpec, build_surface

DEFAULT_CUFFS = (2.0, 2.0, 2.0)
SWEEP_N = (1, 2, 4, 8, 16)


@pytest.fixture(scope="session")
def base_r0():
    """Default base surface and its cut curve, unrefined."""
    return build_surface(FenchelNielsenSpec(cuff_lengths=DEFAULT_CUFFS))


@pytest.fixture(scope="session")
def base_levels(base_r0):
    """Base surface with the cut curve carried through refinements 0..3."""
    levels = [base_r0]
    surface, gamma = base_r0
    for _ in range(3):
        surface, (gamma,) = refine(surface, [gamma])
        levels.append((surface, gamma))
    return levels


@pytest.fixture(scope="session")
def base_spectra(base_levels):
    """Five smallest eigenpairs of the base surface at each refinement level."""
    out = []
    for surface, _ in base_levels:
        pencil = assemble(surface)
        out.append((pencil, solve_smallest(pencil, count=5, tol=1e-9, seed=0)))
    return out


@pytest.fixture(scope="session")
def small_cover(base_r0):
    """Smallest honest cover: n=2, N=1 on the unrefined base (192 dof)."""
    surface, gamma = base_r0
    return cyclic_cover(surface, gamma, n=2, N=1)


@pytest.fixture(scope="session")
def sweep_rows(base_levels):
    """Full certification pipeline at refinement 2 for each cover multiplier."""
    surface, gamma = base_levels[2]
    rows = {}
    for N in SWEEP_N:
        cover = cyclic_cover(surface, gamma, n=2, N=N)
        pencil = assemble(cover.surface)
        spectrum = solve_smallest(pencil, count=4, tol=1e-9, seed=0)
        rows[N] = {
            "cover": cover,
            "pencil": pencil,
            "spectrum": spectrum,
            "report": bound_report(cover, pencil, spectrum),
        }
    return rows


@pytest.fixture(scope="session")
def cover_r3(base_levels):
    """n=2, N=2 cover of the refinement-3 base (distance checks only)."""
    surface, gamma = base_levels[3]
    return cyclic_cover(surface, gamma, n=2, N=2)
