# tests/test_engine_store.py
from features.engine import rules
from features.engine import store as es
from features.engine.model import CongruenceCertificate, Progression, VerifiedToBound, Witness

def _cert(M, beta, ell=5, form="partition"):
    return CongruenceCertificate(form, ell, Progression(M, beta), VerifiedToBound(399, 80, 24, -1), (Witness(Progression(1, 0), 0),))

def test_add_and_list():
    es.init_storage()
    assert es.count_certificates() == 0
    rowid = es.add_certificate(_cert(5, 4))
    assert rowid > 0
    assert es.list_certificates() == [_cert(5, 4)]

def test_duplicates_are_ignored():
    assert es.add_certificate(_cert(5, 4)) > 0
    assert es.add_certificate(_cert(5, 4)) == 0
    assert es.count_certificates() == 1

def test_filters_by_form_and_prime():
    es.add_certificates([_cert(5, 4), _cert(7, 5, ell=7), _cert(7, 0, ell=7, form="delta")])
    assert [c.claim for c in es.list_certificates(ell=7)] == [Progression(7, 5), Progression(7, 0)]
    assert [c.form for c in es.list_certificates(form="delta")] == ["delta"]
    assert es.list_certificates(form="delta", ell=5) == []

def test_derived_certificates_keep_their_parent():
    parent = _cert(7, 1, ell=5, form="f")
    derived = rules.rule_gap(parent, 7)
    assert es.add_certificates([parent, derived]) == 2
    stored = es.list_certificates(form="f")
    assert stored[1] == derived
    assert stored[1].evidence.parent == parent
