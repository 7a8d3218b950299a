"""Command-line front end.

Every run prints a JSON run report on stdout and writes its data files
atomically.  Exit codes: 0 success, 1 failed invariant check, 2 usage or
input error.
"""
from __future__ import annotations

import argparse
import contextlib
import csv
import hashlib
import io
import json
import logging
import os
import sys
import tempfile
from pathlib import Path

import numpy as np

from . import angle, coherent, core, dynamics, orbits, thermal, wigner
from .exceptions import RotorError

log = logging.getLogger("rotorwigner")

EXIT_OK, EXIT_INVARIANT, EXIT_USAGE = 0, 1, 2
STATE_KINDS = ("eigenstate", "superposition", "wavepacket")


class StateSpecError(RotorError):
    """Malformed state or ensemble document."""


# -- input documents -------------------------------------------------------


def _require(doc, key, path):
    if not isinstance(doc, dict):
        raise StateSpecError(f"{path}: expected an object")
    if key not in doc:
        raise StateSpecError(f"{path}.{key}: missing required field" if path else f"{key}: missing required field")
    return doc[key]


def _number(value, path, kind=float):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise StateSpecError(f"{path}: expected a number, got {value!r}")
    if kind is int:
        if int(value) != value:
            raise StateSpecError(f"{path}: expected an integer, got {value!r}")
        return int(value)
    return float(value)


def _amplitude(value, path) -> complex:
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise StateSpecError(f"{path}: complex amplitude must be [re, im]")
        return complex(_number(value[0], path + "[0]"), _number(value[1], path + "[1]"))
    return complex(_number(value, path))


def load_json(text: str, source: str = "<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateSpecError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def rotor_spec_from(doc) -> core.RotorSpec:
    hbar = _number(doc.get("hbar", 1.0), "hbar")
    inertia = _number(doc.get("inertia", 1.0), "inertia")
    try:
        return core.RotorSpec(hbar, inertia)
    except ValueError as exc:
        raise StateSpecError(str(exc)) from None


def build_state(state, spec: core.RotorSpec, cutoff, path="state") -> core.AngularWaveFunction:
    kind = _require(state, "kind", path)
    if kind not in STATE_KINDS:
        raise StateSpecError(f"{path}.kind: unknown kind {kind!r}; expected one of {', '.join(STATE_KINDS)}")
    if kind == "eigenstate":
        n = _number(_require(state, "n", path), f"{path}.n", int)
        return core.make_eigenstate(n, abs(n) if cutoff is None else cutoff, spec)
    if kind == "superposition":
        raw = _require(state, "terms", path)
        if not isinstance(raw, list) or not raw:
            raise StateSpecError(f"{path}.terms: expected a non-empty list of [n, amplitude]")
        terms = []
        for i, term in enumerate(raw):
            if not isinstance(term, list) or len(term) != 2:
                raise StateSpecError(f"{path}.terms[{i}]: expected [n, amplitude]")
            terms.append((_number(term[0], f"{path}.terms[{i}][0]", int), _amplitude(term[1], f"{path}.terms[{i}][1]")))
        if cutoff is None:
            cutoff = max(abs(n) for n, _ in terms)
        return core.make_superposition(terms, cutoff, spec)
    if cutoff is None:
        raise StateSpecError("cutoff: required for wavepacket states")
    return core.make_wavepacket(
        _number(state.get("mean_angle", 0.0), f"{path}.mean_angle"),
        _number(_require(state, "concentration", path), f"{path}.concentration"),
        cutoff,
        spec,
        momentum=_number(state.get("momentum", 0), f"{path}.momentum", int),
    )


def _cutoff_from(doc):
    return None if doc.get("cutoff") is None else _number(doc["cutoff"], "cutoff", int)


def parse_state_spec(document) -> core.AngularWaveFunction:
    """Build a state from a JSON document (text or already-decoded dict)."""
    doc = load_json(document) if isinstance(document, str) else document
    if not isinstance(doc, dict):
        raise StateSpecError("document: expected a JSON object")
    spec = rotor_spec_from(doc)
    return build_state(_require(doc, "state", ""), spec, _cutoff_from(doc))


def parse_ensemble_spec(document, kT=None) -> thermal.ThermalEnsemble:
    doc = load_json(document) if isinstance(document, str) else document
    if not isinstance(doc, dict):
        raise StateSpecError("document: expected a JSON object")
    spec = rotor_spec_from(doc)
    raw = _require(doc, "states", "")
    if not isinstance(raw, list) or not raw:
        raise StateSpecError("states: expected a non-empty list")
    cutoff = _cutoff_from(doc)
    states = [build_state(s, spec, cutoff, f"states[{i}]") for i, s in enumerate(raw)]
    if cutoff is None:
        top = max(psi.cutoff for psi in states)
        states = [core.AngularWaveFunction(spec, top, psi.padded(top)) for psi in states]
    if kT is not None:
        return thermal.build_boltzmann_ensemble(states, kT, spec)
    weights = doc.get("weights")
    if weights is None:
        weights = [1.0] * len(states)
    elif not isinstance(weights, list) or len(weights) != len(states):
        raise StateSpecError(f"weights: expected a list of {len(states)} numbers")
    else:
        weights = [_number(w, f"weights[{i}]") for i, w in enumerate(weights)]
    return thermal.ThermalEnsemble.from_weights(states, weights)


# -- output ----------------------------------------------------------------


def fmt(x) -> str:
    """Shortest round-trip decimal."""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    if isinstance(x, str):
        return x
    return repr(float(x))


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        with contextlib.suppress(FileNotFoundError):
            os.unlink(tmp)
        raise


def csv_text(header, rows, meta) -> str:
    buf = io.StringIO()
    buf.write("# " + ",".join(f"{k}={fmt(v)}" for k, v in meta.items()) + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def json_text(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n"


def _spec_meta(spec) -> dict:
    return {"hbar": spec.hbar, "inertia": spec.inertia}


class Run:
    """Collects checks, pending files and the result object of one command."""

    def __init__(self, command: str):
        self.command = command
        self.inputs: list[str] = []
        self.checks: dict[str, dict] = {}
        self.files: dict[Path, str] = {}
        self.result: dict = {}

    def check(self, name, ok, value):
        self.checks[name] = {"pass": bool(ok), "value": _jsonable(value)}

    def add_csv(self, path, header, rows, meta):
        self.files[Path(path)] = csv_text(header, rows, meta)

    def add_json(self, path, obj):
        self.files[Path(path)] = json_text(obj)

    @property
    def ok(self) -> bool:
        return all(c["pass"] for c in self.checks.values())

    def digest(self) -> str:
        h = hashlib.sha256()
        for item in self.inputs:
            h.update(item.encode("utf-8"))
            h.update(b"\0")
        return h.hexdigest()

    def commit(self, report_path=None) -> dict:
        if self.ok:
            for path, text in self.files.items():
                _atomic_write(path, text)
        report = {
            "command": self.command,
            "input_digest": self.digest(),
            "checks": self.checks,
            "outputs": [str(p) for p in self.files] if self.ok else [],
            "result": self.result,
        }
        if report_path is not None:
            _atomic_write(Path(report_path), json_text(report))
        return report


def _jsonable(x):
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _read(run: Run, path) -> str:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise StateSpecError(f"{path}: {exc.strerror}") from None
    run.inputs.append(text)
    return text


def _field_rows(field):
    for j, phi in enumerate(field.grid.points):
        for k, x in enumerate(field.lattice.points):
            yield phi, x, field.values[j, k]


# -- subcommands -----------------------------------------------------------


def cmd_wigner(args, run: Run):
    psi = parse_state_spec(load_json(_read(run, args.state), args.state))
    grid = core.AngleGrid(args.grid or max(64, 2 * psi.cutoff + 1))
    lattice = wigner.MomentumLattice.for_state(psi, None if args.lattice == "auto" else args.lattice)
    field = wigner.wigner_field(psi, grid, lattice)
    mass = field.mass()
    run.check("mass", abs(mass - 1.0) < 1e-9, mass)
    run.check("imag_residue", field.imag_residue < 1e-10, field.imag_residue)
    if lattice.step is wigner.LatticeStep.INTEGER:
        P, J = np.meshgrid(grid.points, field.J, indexing="ij")
        gap = float(np.max(np.abs(wigner.wigner_point(psi, P, J) - field.values))) * psi.spec.hbar
        run.check("series_vs_kernel", gap < 1e-10, gap)
    run.add_csv(args.out or "wigner.csv", ["phi", "j_over_hbar", "f"], _field_rows(field), _spec_meta(psi.spec))
    run.result = {"mass": mass, "grid": grid.size, "lattice": lattice.step.value, "spec": _spec_meta(psi.spec)}


def cmd_marginals(args, run: Run):
    psi = parse_state_spec(load_json(_read(run, args.state), args.state))
    grid = core.AngleGrid(args.grid or max(64, 2 * psi.cutoff + 1))
    fcs = wigner.marginal_angle(psi, grid.points)
    lo = -(psi.cutoff + 1) if args.j_min is None else args.j_min
    hi = psi.cutoff + 1 if args.j_max is None else args.j_max
    if args.j_step <= 0 or hi < lo:
        raise StateSpecError("momentum sweep needs j_step > 0 and j_max >= j_min")
    steps = int(np.floor((hi - lo) / args.j_step + 1e-9))
    sweep = np.union1d(np.arange(np.ceil(lo), np.floor(hi) + 1), np.round(lo + args.j_step * np.arange(steps + 1), 12))
    fms = wigner.marginal_momentum(psi, sweep * psi.spec.hbar)
    run.check("angle_marginal_nonnegative", fcs.min() >= 0.0, float(fcs.min()))
    integer = np.isclose(sweep, np.round(sweep))
    if core.parity_class(psi) is not core.ParityClass.MIXED:
        worst = float(fms[integer].min()) if integer.any() else 0.0
        run.check("momentum_marginal_nonnegative_on_lattice", worst >= -1e-12, worst)
    field = wigner.wigner_field(psi, grid)
    gap = float(np.max(np.abs(field.angle_marginal() - fcs)))
    run.check("field_angle_marginal", gap < 1e-9, gap)
    meta = _spec_meta(psi.spec)
    prefix = args.out or "marginals"
    run.add_csv(f"{prefix}_angle.csv", ["phi", "fcs"], zip(grid.points, fcs), meta)
    run.add_csv(f"{prefix}_momentum.csv", ["j_over_hbar", "fms"], zip(sweep, fms), meta)
    run.result = {"min_fms": float(fms.min()), "spec": meta}


def _common_cutoff(*states):
    N = max(psi.cutoff for psi in states)
    return [core.AngularWaveFunction(psi.spec, N, psi.padded(N)) for psi in states]


def cmd_overlap(args, run: Run):
    psi1 = parse_state_spec(load_json(_read(run, args.state1), args.state1))
    psi2 = parse_state_spec(load_json(_read(run, args.state2), args.state2))
    psi1, psi2 = _common_cutoff(psi1, psi2)
    closed = wigner.phase_space_overlap(psi1, psi2)
    mixed = core.ParityClass.MIXED in (core.parity_class(psi1), core.parity_class(psi2))
    lattice = wigner.MomentumLattice.covering(psi1.cutoff, "half" if mixed else "int")
    grid = core.AngleGrid(args.grid or 4 * psi1.cutoff + 2)
    if grid.size < 4 * psi1.cutoff + 1:
        raise StateSpecError(f"grid: need at least {4 * psi1.cutoff + 1} points for an exact field product")
    lattice_sum = wigner.field_overlap(wigner.wigner_field(psi1, grid, lattice), wigner.wigner_field(psi2, grid, lattice))
    run.check("overlap_identity", abs(lattice_sum - closed) < 1e-8, abs(lattice_sum - closed))
    run.result = {"overlap": lattice_sum, "inner_product_sq_over_h": closed, "spec": _spec_meta(psi1.spec)}
    if args.json:
        run.add_json(args.json, run.result)


def cmd_evolve(args, run: Run):
    psi = parse_state_spec(load_json(_read(run, args.state), args.state))
    params = dynamics.EvolutionParams(args.time)
    out = dynamics.evolve_quantum(psi, params)
    norm = float(np.linalg.norm(out.coeffs))
    run.check("unitarity", abs(norm - 1.0) < 1e-12, norm)
    run.result = {"norm": norm, "time": args.time, "spec": _spec_meta(psi.spec)}
    if args.check_coherence:
        grid = core.AngleGrid(args.grid or 4 * psi.cutoff + 2)
        residual = dynamics.coherence_residual(psi, params, grid)
        run.check("coherence", residual < 1e-9, residual)
        run.result["residual"] = residual
    if args.out:
        rows = ((n, c.real, c.imag) for n, c in zip(out.indices, out.coeffs))
        run.add_csv(args.out, ["n", "re", "im"], rows, _spec_meta(psi.spec))
    if args.json:
        run.add_json(args.json, run.result)


def cmd_thermal(args, run: Run):
    ens = parse_ensemble_spec(load_json(_read(run, args.ensemble), args.ensemble), args.kT)
    if args.dephase:
        ens = thermal.dephase(ens, args.dephase)
    N = max(psi.cutoff for psi in ens.states)
    grid = core.AngleGrid(args.grid or max(64, 4 * N + 1))
    field = thermal.thermal_field(ens, grid)
    mass = field.mass()
    run.check("mass", abs(mass - 1.0) < 1e-9, mass)
    run.check("imag_residue", field.imag_residue < 1e-10, field.imag_residue)
    omega = thermal.omega_T(ens, "mean")
    omega_second = thermal.omega_T(ens, "second")
    run.result = {
        "omega": omega,
        "omega_second_moment": omega_second,
        "weights": ens.weights.tolist(),
        "spec": _spec_meta(ens.spec),
    }
    if args.wave_residual:
        run.result["residual"] = thermal.wave_equation_residual(ens, grid)
        run.result["residual_second_moment"] = thermal.wave_equation_residual(ens, grid, moment="second")
    run.add_csv(args.out or "thermal.csv", ["phi", "j_over_hbar", "f"], _field_rows(field), _spec_meta(ens.spec))
    if args.json:
        run.add_json(args.json, run.result)


def cmd_coherent(args, run: Run):
    run.inputs.append(f"{args.lam!r},{args.nmax}")
    dist = coherent.poisson_weights(args.lam, args.nmax)
    z = np.sqrt(args.lam)
    series = np.array([coherent.coherent_overlap_weight(z, n) for n in dist.n])
    gap = float(np.max(np.abs(series - dist.weights)))
    run.check("overlap_weight_identity", gap < 1e-12, gap)
    total = float(dist.weights.sum())
    run.check("normalization", abs(total - 1.0) < 1e-10, total)
    run.result = {"entropy": coherent.distribution_entropy(dist), "mean": float(np.dot(dist.n, dist.weights))}
    if args.lam > 0:
        run.result["gaussian_entropy"] = coherent.gaussian_reference_entropy(args.lam)
    run.add_csv(args.out or "coherent.csv", ["n", "w_n"], zip(dist.n, dist.weights), {"lambda": args.lam})
    if args.json:
        run.add_json(args.json, run.result)


def cmd_orbits(args, run: Run):
    run.inputs.append(f"{args.system},{args.central_mass!r},{args.orbiter_mass!r}")
    system = orbits.OrbitSystem(args.central_mass) if args.central_mass else orbits.SYSTEMS[args.system]()
    worst = max(
        abs(a / b - 1.0) for a, b in (orbits.kepler_consistency(n, system, args.orbiter_mass) for n in range(61))
    )
    run.check("kepler_consistency", worst < 1e-12, worst)
    meta = {"central_mass": system.central_mass, "schwarzschild_radius": system.schwarzschild_radius}
    out = args.out or "orbits.csv"
    if args.system == "jupiter" and not args.central_mass:
        rows = orbits.table1(system)
        run.add_csv(out, ["name", "n", "r_obs_m", "r_n_m", "ratio"], ((r.name, r.n, r.r_obs, r.r_n, r.ratio) for r in rows), meta)
        run.result = {"rows": [{"name": r.name, "n": r.n, "ratio": r.ratio} for r in rows]}
    else:
        ns = range(args.n_min, args.n_max + 1)
        run.add_csv(out, ["n", "r_n_m"], ((n, orbits.orbit_radius(n, system)) for n in ns), meta)
        run.result = {"rows": len(ns)}
    run.result["schwarzschild_radius"] = system.schwarzschild_radius


def cmd_gibbs(args, run: Run):
    run.inputs.append(f"{args.n},{args.phi!r}")
    partial = angle.gibbs_limit_sum(args.n, args.phi)
    reference = float(angle.gibbs_limit(args.phi))
    run.result = {
        "partial_sum": partial,
        "reference_2si": reference,
        "relative_gap": abs(partial - reference) / abs(reference) if reference else abs(partial),
        "paper_constant_pi_units": angle.QUOTED_GIBBS_CONSTANT,
        "reference_pi_units": reference / np.pi,
    }
    if args.json:
        run.add_json(args.json, run.result)


# -- entry point -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rotorwigner", description=__doc__.splitlines()[0])
    parser.add_argument("--report", help="also write the run report to this path")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("wigner", help="Wigner field on an angle grid x momentum lattice")
    p.add_argument("--state", required=True)
    p.add_argument("--grid", type=int)
    p.add_argument("--lattice", choices=["int", "half", "auto"], default="auto")
    p.add_argument("--out", help="CSV path (default wigner.csv)")
    p.set_defaults(func=cmd_wigner)

    p = sub.add_parser("marginals", help="angle and momentum marginals")
    p.add_argument("--state", required=True)
    p.add_argument("--grid", type=int)
    p.add_argument("--j-min", type=float)
    p.add_argument("--j-max", type=float)
    p.add_argument("--j-step", type=float, default=0.25, help="sweep step in units of hbar")
    p.add_argument("--out", help="CSV path prefix (default marginals)")
    p.set_defaults(func=cmd_marginals)

    p = sub.add_parser("overlap", help="phase-space overlap of two states")
    p.add_argument("--state1", required=True)
    p.add_argument("--state2", required=True)
    p.add_argument("--grid", type=int)
    p.add_argument("--json")
    p.set_defaults(func=cmd_overlap)

    p = sub.add_parser("evolve", help="free evolution and the quantum-classical coherence check")
    p.add_argument("--state", required=True)
    p.add_argument("--time", type=float, required=True)
    p.add_argument("--check-coherence", action="store_true")
    p.add_argument("--grid", type=int)
    p.add_argument("--out", help="CSV of evolved coefficients")
    p.add_argument("--json")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("thermal", help="thermal ensemble field, dephasing and wave-equation check")
    p.add_argument("--ensemble", required=True)
    p.add_argument("--kT", type=float)
    p.add_argument("--dephase", type=float, default=0.0, metavar="TAU")
    p.add_argument("--wave-residual", action="store_true")
    p.add_argument("--grid", type=int)
    p.add_argument("--out", help="CSV path (default thermal.csv)")
    p.add_argument("--json")
    p.set_defaults(func=cmd_thermal)

    p = sub.add_parser("coherent", help="Poisson weights of a rotational coherent state")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--out", help="CSV path (default coherent.csv)")
    p.add_argument("--json")
    p.set_defaults(func=cmd_coherent)

    p = sub.add_parser("orbits", help="quantized orbit radii")
    p.add_argument("--system", choices=sorted(orbits.SYSTEMS), default="jupiter")
    p.add_argument("--central-mass", type=float, help="override the central mass (kg)")
    p.add_argument("--orbiter-mass", type=float, default=1.0)
    p.add_argument("--n-min", type=int, default=0)
    p.add_argument("--n-max", type=int, default=45)
    p.add_argument("--out", help="CSV path (default orbits.csv)")
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("gibbs", help="Gibbs-phenomenon partial sum")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--phi", type=float, default=np.pi)
    p.add_argument("--json")
    p.set_defaults(func=cmd_gibbs)
    return parser


def _thread_limit():
    raw = os.environ.get("ROTOR_NUM_THREADS")
    if not raw:
        return contextlib.nullcontext()
    from threadpoolctl import threadpool_limits

    return threadpool_limits(limits=max(1, int(raw)))


def run_command(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    run = Run(args.command)
    run.inputs.append(" ".join(argv if argv is not None else sys.argv[1:]))
    try:
        with _thread_limit():
            args.func(args, run)
    except (RotorError, ValueError) as exc:
        print(f"rotorwigner {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = run.commit(args.report)
    stdout.write(json_text(report))
    for name, c in run.checks.items():
        if not c["pass"]:
            log.error("invariant %s failed (value %s)", name, c["value"])
    return EXIT_OK if run.ok else EXIT_INVARIANT


def main():
    sys.exit(run_command())


if __name__ == "__main__":
    main()
