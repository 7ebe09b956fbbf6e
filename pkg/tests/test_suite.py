"""The bundled verification suite: case registry and runner mechanics."""

from complen.suite import SuiteCase, all_cases, run_case, select_cases

CHEAP_CASE = "standard-F3-I-dim1"


def test_case_ids_unique_and_tagged():
    cases = all_cases()
    ids = [c.id for c in cases]
    assert len(ids) == len(set(ids))
    assert all(c.provenance in ("claimed", "derived") for c in cases)
    assert all(c.expected for c in cases)
    for c in cases:
        assert (c.run is None) == bool(c.skip), c.id


def test_registry_covers_every_family():
    ids = [c.id for c in all_cases()]
    for prefix in (
        "okubo-gf2-exhaustive",
        "standard-F2-",
        "standard-F3-",
        "standard-Q-",
        "identities-hurwitz-",
        "identities-okubo-",
        "identities-pseudo-octonion",
        "norm-recovery-",
        "two-dim-form-",
        "okubo-isotropic-F5-witness",
        "okubo-idempotent-Q-witness",
        "okubo-isotropic-not-alternative",
        "a4-not-descending",
        "okubo-exceptional-length3",
    ):
        assert any(i.startswith(prefix) for i in ids), prefix


def test_select_cases_sorted_and_filtered():
    every = select_cases()
    assert [c.id for c in every] == sorted(c.id for c in every)
    some = select_cases("identities-*")
    assert some and all(c.id.startswith("identities-") for c in some)
    assert select_cases("no-such-case-*") == []


def test_run_case_pass_and_determinism():
    case = next(c for c in all_cases() if c.id == CHEAP_CASE)
    o1 = run_case(case, seed=0)
    o2 = run_case(case, seed=0)
    assert o1.status == "PASS"
    assert o1.measured == o1.expected == o2.measured


def test_run_case_skip():
    case = next(c for c in all_cases() if c.id == "okubo-exceptional-length3")
    out = run_case(case, seed=0)
    assert out.status == "SKIP"
    assert out.expected == "l=3"
    assert out.measured.startswith("skip: ")
    assert out.seconds == 0.0


def test_run_case_crash_becomes_fail_row():
    def boom(seed):
        raise ValueError("synthetic")

    case = SuiteCase("synthetic-crash", "ok", "derived", boom)
    out = run_case(case, seed=0)
    assert out.status == "FAIL"
    assert out.measured == "error: ValueError: synthetic"


def test_run_case_mismatch_is_fail():
    case = SuiteCase("synthetic-mismatch", "l=9", "derived", lambda seed: "l=1")
    out = run_case(case, seed=0)
    assert out.status == "FAIL" and out.measured == "l=1"
