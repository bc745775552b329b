"""Smoke tests for the native module's Python surface."""

import _core


def test_parse_and_transform():
    program = _core.parse_program(
        "mov r1, %tid\n"
        "imul r2, r1, 4\n"
        "ld.global r3, [r2+0]\n"
        "st.global [r2+256], r3\n"
        "exit\n"
    )
    assert program.num_instructions == 5
    assert program.num_blocks == 1
    assert _core.lat_count(program) == 2

    with_barriers = _core.insert_lat_barriers(program)
    assert with_barriers.num_instructions == 7
    assert "bar.synch_partner" in str(with_barriers)


def test_ipdom_map():
    program = _core.parse_program(
        "setp.eq p0, %tid, 0\n"
        "@p0 bra SKIP\n"
        "iadd r1, r1, 1\n"
        "SKIP:\n"
        "exit\n"
    )
    assert program.ipdom_map == {1: 3}


def test_coalesce_addresses():
    assert _core.coalesce_addresses([4 * lane for lane in range(8)]) == [0]
    assert _core.coalesce_addresses([4 * lane for lane in range(64)]) == [0, 64, 128, 192]


def test_generate_workload():
    w = _core.generate_workload("streaming:threads=64,blocks=2")
    assert w["name"] == "streaming"
    assert w["grid_size"] == 2
    assert w["block_size"] == 64
    assert "ld.global" in w["text"]


def test_run_fixed_vs_dwr():
    base = "[cache]\nenabled = off\n[run]\nworkload = streaming:threads=64\n"
    fixed8 = _core.run(base + "[sm]\nwarp_size = 8\n")
    fixed64 = _core.run(base + "[sm]\nwarp_size = 64\n")
    dwr64 = _core.run(base + "[sm]\ndwr = 64\n")

    assert fixed8["coalescing_rate"] == 8.0
    assert fixed64["coalescing_rate"] == 16.0
    assert dwr64["offchip_requests"] == fixed64["offchip_requests"]
    for stats in (fixed8, fixed64, dwr64):
        assert stats["idle_cycles"] + stats["busy_cycles"] == stats["total_cycles"]


def test_run_is_deterministic():
    cfg = "[sm]\ndwr = 32\n[run]\nworkload = divergent:threads=64\n"
    assert _core.run(cfg) == _core.run(cfg)


def test_storage_overhead():
    assert _core.storage_overhead(16, 8, 4, 8) == (82, 124)
