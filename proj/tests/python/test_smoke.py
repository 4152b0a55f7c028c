"""Smoke tests for the python bindings."""

import coolba


def test_derive_params():
    p = coolba.derive_params(31, 10, 240)
    assert (p.k, p.c, p.m, p.w) == (3, 80, 5, 16)
    assert p.correction_capacity >= p.t
    assert "k=3" in repr(p)


def test_field_ops():
    assert coolba.gf_add(0b0011, 0b0101) == 0b0110
    for a in range(1, 256):
        assert coolba.gf_mul(8, a, coolba.gf_inv(8, a)) == 1


def test_codec_round_trip():
    p = coolba.derive_params(7, 2, 40)
    data = bytes([1, 2, 3, 4, 5])
    block = coolba.stripe(data, p)
    assert coolba.unstripe(block, p) == data
    observations = [(i, coolba.encode(p.w, block, i)) for i in range(1, 8)]
    # corrupt up to the capacity
    observations[0] = (1, [s ^ 0x1F for s in observations[0][1]])
    observations[4] = (5, [s ^ 0x2A for s in observations[4][1]])
    decoded = coolba.decode(p.w, observations, p.k, (7 - p.k) // 2)
    assert decoded == block


def test_decode_failure_is_none():
    p = coolba.derive_params(7, 2, 40)
    block = coolba.stripe(bytes(5), p)
    observations = [(i, coolba.encode(p.w, block, i)) for i in range(1, 8)]
    observations[2] = (3, [s ^ 1 for s in observations[2][1]])
    assert coolba.decode(p.w, observations, p.k, 0) is None


def test_crafted_collisions():
    p = coolba.derive_params(31, 10, 240)
    base = bytes(range(30))
    m1, m2 = coolba.craft_colliding_messages(p, {1, 12}, base)
    assert m1 == base and m2 != m1
    b1, b2 = coolba.stripe(m1, p), coolba.stripe(m2, p)
    for i in (1, 12):
        assert coolba.encode(p.w, b1, i) == coolba.encode(p.w, b2, i)
    assert any(coolba.encode(p.w, b1, i) != coolba.encode(p.w, b2, i) for i in range(1, 32))


def test_run_ba_silent_all_equal():
    value = bytes([0xAB])
    rec = coolba.run_ba(4, 1, 8, adversary="silent", seed=1, base=value)
    assert rec["ok"]
    assert rec["flags"]["valid_holds"]
    assert set(rec["outputs"].values()) == {value}
    assert rec["rounds_total"] == 3 * 2 + 6
    assert rec["bits"]["b1"] == 2 * rec["c"] * 4 * 3


def test_run_ba_consistency_attack():
    rec = coolba.run_ba(31, 10, 240, adversary="consistency", seed=7)
    assert rec["flags"]["consistent"]
    assert rec["flags"]["lemma3_ok"]
    assert len(set(rec["outputs"].values())) == 1


def test_run_bb_honest_leader():
    value = bytes([1, 2, 3, 4])
    rec = coolba.run_bb(7, 2, 32, leader=1, leader_value=value, adversary="random", seed=3)
    assert rec["ok"]
    assert set(rec["outputs"].values()) == {value}
    assert rec["bits"]["leader_bits"] == 6 * 32


def test_run_ba_committee():
    value = bytes([9] * 4)
    rec = coolba.run_ba_committee(40, 2, 32, adversary="silent", seed=5, base=value)
    assert rec["ok"]
    assert len(rec["outputs"]) == 38  # the last t ids are faulty
    assert set(rec["outputs"].values()) == {value}


def test_determinism():
    a = coolba.run_ba(7, 2, 64, adversary="random", seed=42)
    b = coolba.run_ba(7, 2, 64, adversary="random", seed=42)
    assert a == b
