import os
import subprocess

import pytest

charsum = pytest.importorskip("charsum")


def test_form_parsing_and_rank():
    q = charsum.QuadraticForm.parse("x1x2+x3x4+x5x6", 6)
    assert str(q) == "x1x2+x3x4+x5x6"
    assert charsum.witt_rank(q) == 3
    assert charsum.witt_rank(charsum.QuadraticForm.parse("x1+x2+1", 6)) == 0


def test_decomposition_recomposes():
    q = charsum.QuadraticForm.parse("x1x2+x1x3+x2x3", 4)
    d = charsum.witt_decompose(q)
    assert d.rank == 1
    assert d.recompose() == q
    assert str(d.residual) == "x3"


def test_normal_form():
    q = charsum.QuadraticForm.parse("x1x2+x1x3", 6)
    assert str(charsum.witt_normal_form(q)) == "x1x2"


def test_characters_and_sums():
    s = charsum.CharacterSum.parse("0 ; x1x2+1 ; x3x4+1 ; x1x2+x3x4", 4)
    assert charsum.sum_table(s) == charsum.and_table(4)
    assert charsum.sum_table(s).support() == 1

    t = charsum.character_table(charsum.QuadraticForm.parse("x1", 1))
    assert str(t) == "12"


def test_product_construction():
    for n in (2, 4, 6):
        s = charsum.and_product_construction(n)
        assert s.weight == 2 ** (n // 2)
        assert charsum.sum_table(s) == charsum.and_table(n)


def test_expansions():
    q = charsum.QuadraticForm.parse("x1x2", 2)
    lin = charsum.expand_character(q)
    assert lin.weight == 4
    assert charsum.sum_table(lin) == charsum.character_table(q)


def test_search_small():
    w = charsum.bfs_min_weight(charsum.and_table(2))
    assert w.weight == 2
    assert charsum.sum_table(w.sum) == charsum.and_table(2)


def test_sampling_determinism():
    a = charsum.sample_histogram(6, 2, 5000, seed=7, threads=1)
    b = charsum.sample_histogram(6, 2, 5000, seed=7, threads=2)
    assert a == b
    assert sum(a.values()) == 5000


def test_family_profile():
    assert charsum.family_support_profile(4, 1) == {12: 4, 4: 4, 8: 24}


def test_group_order():
    gens = charsum.g72_generators()
    assert len(charsum.closure(list(gens))) == 72
    a, b, c, d, e = gens
    assert c * a * c == b


def test_program_evaluation():
    program = "bit=1 zero=1 one=a\naccept=1\n"
    element, accepted = charsum.eval_g72_program(program, "0")
    assert accepted
    element, accepted = charsum.eval_g72_program(program, "1")
    assert not accepted


def test_circuit_roundtrip():
    s = charsum.CharacterSum.parse("x1x2 ; x3+1", 4)
    c = charsum.characters_to_depth3(s)
    back = charsum.depth3_to_characters(c)
    table = charsum.sum_table(s)
    for x in range(16):
        assert (c.evaluate(x) == 1) == (table.value(x) == 0)
    parsed = charsum.Circuit.parse_netlist(c.to_netlist())
    assert parsed.to_netlist() == c.to_netlist()


def test_interpolation():
    p = charsum.interpolate(charsum.and_table(3))
    assert p.degree == 3
    assert p.to_table() == charsum.and_table(3)


def test_capacity_errors():
    with pytest.raises(RuntimeError):
        charsum.bfs_min_weight(charsum.FunctionTable(5))
    with pytest.raises(ValueError):
        charsum.QuadraticForm.parse("x9", 4)


@pytest.fixture(scope="module")
def cli():
    path = os.environ.get("CHARSUM_CLI")
    if not path or not os.path.exists(path):
        pytest.skip("CHARSUM_CLI not set")
    return path


def test_cli_rank(cli):
    out = subprocess.run([cli, "rank", "x1x2+x3x4+x5x6", "--n", "6"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert out.stdout.strip() == "3"


def test_cli_sample_deterministic(cli):
    args = [cli, "sample", "--n", "6", "--w", "2", "--samples", "2000",
            "--seed", "5"]
    first = subprocess.run(args, capture_output=True, text=True)
    second = subprocess.run(args, capture_output=True, text=True)
    assert first.returncode == 0
    assert first.stdout == second.stdout
    assert first.stdout.startswith("# seed=5\n")


def test_cli_sample_thread_independent(cli):
    base = [cli, "sample", "--n", "6", "--w", "3", "--samples", "4000",
            "--seed", "9", "--threads"]
    one = subprocess.run(base + ["1"], capture_output=True, text=True)
    two = subprocess.run(base + ["2"], capture_output=True, text=True)
    assert one.returncode == 0 and two.returncode == 0
    assert one.stdout == two.stdout


def test_cli_convert_roundtrip(cli):
    sum_text = "x1x2+1 ; x3"
    circ = subprocess.run([cli, "convert", "--to", "circuit", "--n", "4"],
                          input=sum_text, capture_output=True, text=True)
    assert circ.returncode == 0
    back = subprocess.run([cli, "convert", "--to", "characters"],
                          input=circ.stdout, capture_output=True, text=True)
    assert back.returncode == 0
    s = charsum.CharacterSum.parse(sum_text, 4)
    recovered = charsum.CharacterSum.parse(back.stdout.strip(), 4)
    assert charsum.sum_table(recovered) == charsum.sum_table(s)


def test_cli_decompose_reparses(cli):
    form_text = "x1x2+x1x3+x2x3+x4"
    out = subprocess.run([cli, "decompose", form_text, "--n", "4"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    fields = dict(line.split("=", 1) for line in out.stdout.splitlines())
    assert fields["rank"] == "1"
    left_text, right_text = fields["pair1"].strip("()").split(")*(")
    left = charsum.LinearForm.parse(left_text, 4)
    right = charsum.LinearForm.parse(right_text, 4)
    residual = charsum.LinearForm.parse(fields["residual"], 4)
    q = charsum.QuadraticForm.parse(form_text, 4)
    for x in range(16):  # recompose pointwise from the printed pieces alone
        assert (left.eval(x) and right.eval(x)) ^ residual.eval(x) == q.eval(x)


def test_cli_normal_form_reparses(cli):
    out = subprocess.run([cli, "normal-form", "x2x3+x2", "--n", "6"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    nf = charsum.QuadraticForm.parse(out.stdout.strip(), 6)
    assert charsum.witt_rank(nf) == 1


def test_cli_verify_and_reparses(cli):
    out = subprocess.run([cli, "verify-and", "--n", "4"], capture_output=True,
                         text=True)
    assert out.returncode == 0
    sum_line = [l for l in out.stdout.splitlines() if l.startswith("sum=")][0]
    s = charsum.CharacterSum.parse(sum_line[4:], 4)
    assert charsum.sum_table(s) == charsum.and_table(4)


def test_cli_grid_format(cli):
    out = subprocess.run([cli, "grid", "--samples", "3000", "--seed", "2"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    lines = out.stdout.splitlines()
    assert len(lines) == 65
    assert all(len(l) == 65 and set(l) <= {"0", "1"} for l in lines)
    assert "# seed=2" in out.stderr


def test_cli_g72_verify(cli):
    out = subprocess.run([cli, "g72", "verify"], capture_output=True, text=True)
    assert out.returncode == 0
    assert "order=72" in out.stdout


def test_cli_capacity_exit_code(cli):
    out = subprocess.run([cli, "bfs-and", "--n", "5"], capture_output=True,
                         text=True)
    assert out.returncode == 3


def test_cli_usage_exit_code(cli):
    out = subprocess.run([cli, "rank", "x1x1", "--n", "4"], capture_output=True,
                         text=True)
    assert out.returncode == 2
