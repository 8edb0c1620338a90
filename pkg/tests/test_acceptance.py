"""Acceptance suite: one test per criterion, one printed verdict line each.

Each test prints "criterion N ... PASS/FAIL" directly to the terminal
(bypassing capture) before asserting, so a full run always shows the ten
verdict lines.  All arithmetic is exact; every tolerance is zero.
"""

import json
import random

import pytest

from exactcouples.category import (
    is_strict,
    mediate_pullback,
    mediate_pushout,
)
from exactcouples.cli import main
from exactcouples.couple import (
    check_cohomology_identification,
    cohomology,
    derive,
    iterate,
    omega,
    validate_couple,
)
from exactcouples.errors import CoupleValidationError, MediationError
from exactcouples.filt import FILT, shift_fixture
from exactcouples.fixtures import fixture_couples, fixtures_dir
from exactcouples.generators import (
    alpha_zero_couple,
    degenerate_couple,
    lemma_suite,
    massey_couple,
    massey_fixture,
)
from exactcouples.linalg import Matrix
from exactcouples.serialize import couple_to_doc, doc_to_couple, dumps_canonical, loads
from exactcouples.vect import VECT

from oracles import cohomology_dim, page_dim


@pytest.fixture
def verdict(capsys):
    def report(number, label, failures):
        status = "PASS" if not failures else f"FAIL ({len(failures)} problem(s))"
        with capsys.disabled():
            print(f"criterion {number:2d} [{label}]: {status}")
        assert not failures, failures[:5]

    return report


@pytest.fixture(scope="session")
def derived_vect(vect_pool):
    """Both derived couples of every vect-pool couple, computed once."""
    return [(c, derive(c, "left"), derive(c, "right")) for c in vect_pool]


@pytest.fixture(scope="session")
def derived_filt(filt_pool):
    return [(c, derive(c, "left"), derive(c, "right")) for c in filt_pool]


def test_criterion_01_derived_couples_are_exact(derived_vect, derived_filt, verdict):
    failures = []
    for pool, tag in ((derived_vect, "vect"), (derived_filt, "filt")):
        for i, (c, dl, dr) in enumerate(pool):
            for dc in (dl, dr):
                try:
                    validate_couple(dc.couple.alpha, dc.couple.beta, dc.couple.gamma)
                except CoupleValidationError as exc:
                    failures.append(f"{tag}[{i}] {dc.side}: {exc}")
    assert len(derived_vect) >= 200 and len(derived_filt) >= 50
    verdict(1, "both derived couples exact on every instance", failures)


def test_criterion_02_cohomology_identifications(derived_vect, derived_filt, verdict):
    failures = []
    for pool, tag in ((derived_vect, "vect"), (derived_filt, "filt")):
        for i, (c, dl, dr) in enumerate(pool):
            rep = check_cohomology_identification(dl, dr, cohomology(c.differential()))
            if not rep.ok:
                failures.append(f"{tag}[{i}]: {rep.failures}")
    verdict(2, "theta'/tau' identities and H-+ isos", failures)


def test_criterion_03_omega_bimorphism(derived_vect, derived_filt, verdict):
    failures = []
    for pool, tag in ((derived_vect, "vect"), (derived_filt, "filt")):
        for i, (c, dl, dr) in enumerate(pool):
            om = omega(dl, dr)
            if not (om.unique and om.monic and om.epic):
                failures.append(f"{tag}[{i}]: omega not a unique bimorphism")
            certified = (
                om.ker_verdict.verdict == "certified-true"
                or om.cok_verdict.verdict == "certified-true"
            )
            if certified and not om.iso:
                failures.append(f"{tag}[{i}]: certified semistable but omega not iso")
    verdict(3, "omega unique, bimorphic, iso when certified", failures)


def test_criterion_04_depth3_iteration_trees(verdict):
    failures = []
    rng = random.Random(404)
    couples = {
        "degenerate": degenerate_couple(2),
        "alpha_zero": alpha_zero_couple(),
        "massey": massey_couple(massey_fixture(), rng)[0],
    }
    for name, c in couples.items():
        tree = iterate(c, 3)
        if len(tree.all_nodes()) != 15 or len(tree.leaves()) != 8:
            failures.append(f"{name}: tree is not complete full binary of depth 3")
        for k in range(4):
            if len(tree.nodes_at_depth(k)) != 2**k:
                failures.append(f"{name}: wrong node count at depth {k}")
        for node in tree.all_nodes():
            if node.error is not None:
                failures.append(f"{name} node {node.path}: {node.error}")
            if not node.certificate:
                failures.append(f"{name} node {node.path}: certificate missing")
    verdict(4, "depth-3 trees complete, exact, certified", failures)


def test_criterion_05_lemma_suites(verdict):
    failures = []
    for which in ("first", "second", "pushout_strict"):
        rep = lemma_suite(which, trials=500, seed=505)
        if rep.failures:
            failures.append(f"{which}: {len(rep.failures)} conclusion failures")
    verdict(5, "500-trial lemma suites, zero failures", failures)


def test_criterion_06_abelian_degeneration(derived_vect, verdict):
    failures = []
    for i, (c, _, _) in enumerate(derived_vect[:200]):
        coh = cohomology(c.differential())
        expected = cohomology_dim(c.differential().matrix)
        got = (VECT.dim(coh.Hminus), VECT.dim(coh.Hplus))
        if got != (expected, expected):
            failures.append(f"vect[{i}]: H dims {got} != rank-nullity {expected}")
    verdict(6, "dim H- = dim H+ = dim ker - rank (independent oracle)", failures)


def test_criterion_07_page_dimensions_match_oracle(verdict):
    failures = []
    fc = massey_fixture()
    assert fc.n_levels == 3 and sum(fc.dims) <= 12
    c, _ = massey_couple(fc, random.Random(707))
    a, b, g = c.alpha.matrix, c.beta.matrix, c.gamma.matrix
    for side in ("left", "right"):
        d1 = derive(c, side)
        if VECT.dim(d1.couple.E) != page_dim(a, b, g, 1):
            failures.append(f"{side}: E dim after 1 derivation off")
        d2 = derive(d1.couple, side)
        if VECT.dim(d2.couple.E) != page_dim(a, b, g, 2):
            failures.append(f"{side}: E dim after 2 derivations off")
    verdict(7, "E dims after 1 and 2 derivations equal Z/B oracle", failures)


def test_criterion_08_mediation_universal_property(verdict):
    failures = []
    for be in (VECT, FILT):
        rng = random.Random(808)
        for trial in range(250):
            x = be.random_object(rng, max_dim=3)
            y = be.random_object(rng, max_dim=3)
            z = be.random_object(rng, max_dim=3)
            w = be.random_object(rng, max_dim=3)
            # pullback: commuting cone from w must mediate uniquely
            f = be.random_morphism(rng, x, z)
            g = be.random_morphism(rng, y, z)
            sq = be.pullback(f, g)
            h = be.random_morphism(rng, w, sq.obj)
            u, v = sq.first @ h, sq.second @ h
            try:
                if mediate_pullback(sq, u, v) != h:
                    failures.append(f"{be.name} pb[{trial}]: mediation not unique")
            except MediationError as exc:
                failures.append(f"{be.name} pb[{trial}]: {exc}")
            # perturb the cone until it no longer commutes
            delta = be.random_morphism(rng, w, x)
            if (f @ (u + delta)).matrix != (g @ v).matrix:
                try:
                    mediate_pullback(sq, u + delta, v)
                    failures.append(f"{be.name} pb[{trial}]: accepted a broken cone")
                except MediationError:
                    pass
            # pushout, dually
            fo = be.random_morphism(rng, z, x)
            go = be.random_morphism(rng, z, y)
            po = be.pushout(fo, go)
            h2 = be.random_morphism(rng, po.obj, w)
            u2, v2 = h2 @ po.first, h2 @ po.second
            try:
                if mediate_pushout(po, u2, v2) != h2:
                    failures.append(f"{be.name} po[{trial}]: mediation not unique")
            except MediationError as exc:
                failures.append(f"{be.name} po[{trial}]: {exc}")
            delta2 = be.random_morphism(rng, x, w)
            if ((u2 + delta2) @ fo).matrix != (v2 @ go).matrix:
                try:
                    mediate_pushout(po, u2 + delta2, v2)
                    failures.append(f"{be.name} po[{trial}]: accepted a broken cocone")
                except MediationError:
                    pass
    verdict(8, "mediation iff the cone commutes, 500 cones per backend", failures)


def test_criterion_09_semiabelian_probe(verdict):
    failures = []
    rng = random.Random(909)
    for trial in range(500):
        src = FILT.random_object(rng, max_dim=4)
        tgt = FILT.random_object(rng, max_dim=4)
        f = FILT.random_morphism(rng, src, tgt)
        bar = is_strict(f).factorization.bar
        if not (bar.is_monic() and bar.is_epic()):
            failures.append(f"trial {trial}: comparison morphism not bimorphic")
    sf = shift_fixture()
    st = is_strict(sf)
    bar = st.factorization.bar
    if not (bar.is_monic() and bar.is_epic()):
        failures.append("shift fixture: bar not bimorphic")
    if st.strict:
        failures.append("shift fixture wrongly declared strict")
    if "level 1" not in str(st.witness):
        failures.append("shift fixture: no level witness")
    verdict(9, "bar always bimorphic; shift fixture non-strict with witness", failures)


def test_criterion_10_cli_round_trip_and_exit_codes(tmp_path, capsys, verdict):
    failures = []
    for name, couple in fixture_couples().items():
        path = fixtures_dir() / f"{name}.json"
        text = path.read_text()
        reparsed = dumps_canonical(couple_to_doc(doc_to_couple(loads(text))))
        if reparsed != text:
            failures.append(f"{name}: round-trip not byte-identical")
        if main(["check", str(path)]) != 0:
            failures.append(f"{name}: check should exit 0")
    # exit 1: break exactness but keep the document well-formed
    doc = json.loads((fixtures_dir() / "alpha_zero.json").read_text())
    doc["morphisms"]["gamma"] = [["0", "0"]]
    bad = tmp_path / "nonexact.json"
    bad.write_text(json.dumps(doc))
    if main(["check", str(bad)]) != 1:
        failures.append("non-exact document: expected exit 1")
    # exit 2: malformed JSON, missing file, bad usage
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    if main(["check", str(broken)]) != 2:
        failures.append("malformed JSON: expected exit 2")
    if main(["check", str(tmp_path / "absent.json")]) != 2:
        failures.append("missing file: expected exit 2")
    if main(["no-such-command"]) != 2:
        failures.append("unknown command: expected exit 2")
    capsys.readouterr()
    verdict(10, "serialize/parse byte-identical; exit codes 0/1/2", failures)
