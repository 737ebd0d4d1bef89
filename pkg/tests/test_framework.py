import numpy as np
import pytest

from afkit import (ArgumentationFramework, FORMATS, ParseError,
                   load_framework, parse_apx, parse_iccma)
from afkit.framework import degrees


class TestConstruction:
    def test_basic_structure(self, af_seven):
        assert af_seven.n == 7
        assert (1, 2) in af_seven.attacks
        assert af_seven.attackers_of(3) == (2, 4)
        assert af_seven.targets_of(4) == (3, 5)
        assert af_seven.attackers_of(1) == ()

    def test_duplicate_attacks_collapse(self):
        af = ArgumentationFramework(2, [(1, 2), (1, 2), (2, 1)])
        assert af.attacks == ((1, 2), (2, 1))

    def test_rejects_nonpositive_count(self):
        with pytest.raises(ValueError, match="positive"):
            ArgumentationFramework(0)

    def test_rejects_out_of_range_attack(self):
        with pytest.raises(ValueError, match="out of range"):
            ArgumentationFramework(2, [(1, 3)])

    def test_rejects_bad_names(self):
        with pytest.raises(ValueError, match="names"):
            ArgumentationFramework(2, [], names=["a"])
        with pytest.raises(ValueError, match="unique"):
            ArgumentationFramework(2, [], names=["a", "a"])

    def test_degrees(self, af_seven):
        in_deg, out_deg = degrees(af_seven)
        assert in_deg.tolist() == [0, 1, 2, 1, 2, 1, 1]
        assert out_deg.tolist() == [1, 1, 1, 2, 1, 1, 1]

    def test_edge_array_zero_based(self, af_seven):
        edges = af_seven.edge_array
        assert edges.shape == (8, 2)
        assert edges.min() == 0
        assert edges.max() == 6
        assert [1, 2] in (edges + 1).tolist()

    def test_edge_array_empty(self):
        af = ArgumentationFramework(3)
        assert af.edge_array.shape == (0, 2)
        assert af.in_degrees.tolist() == [0, 0, 0]

    def test_equality_ignores_attack_order(self):
        left = ArgumentationFramework(3, [(1, 2), (2, 3)])
        right = ArgumentationFramework(3, [(2, 3), (1, 2)])
        assert left == right
        assert left != ArgumentationFramework(3, [(1, 2)])
        assert left != ArgumentationFramework(4, [(1, 2), (2, 3)])


class TestIccmaParsing:
    def test_parses_header_and_attacks(self):
        af = parse_iccma("p af 3\n1 2\n2 3\n")
        assert af.n == 3
        assert af.attacks == ((1, 2), (2, 3))

    def test_tolerates_comments_and_blanks(self):
        af = parse_iccma("# intro\n\np af 2\n# middle\n1 2\n\n")
        assert af.attacks == ((1, 2),)

    def test_accepts_bytes(self):
        assert parse_iccma(b"p af 1\n").n == 1

    def test_rejects_attack_before_header(self):
        with pytest.raises(ParseError, match="before"):
            parse_iccma("1 2\np af 2\n")

    def test_rejects_duplicate_header(self):
        with pytest.raises(ParseError, match="duplicate"):
            parse_iccma("p af 2\np af 2\n")

    def test_rejects_missing_header(self):
        with pytest.raises(ParseError, match="missing"):
            parse_iccma("# nothing here\n")

    def test_rejects_malformed_header(self):
        with pytest.raises(ParseError):
            parse_iccma("p cnf 3\n")
        with pytest.raises(ParseError):
            parse_iccma("p af\n")
        with pytest.raises(ParseError, match="not an integer"):
            parse_iccma("p af x\n")
        with pytest.raises(ParseError, match="positive"):
            parse_iccma("p af 0\n")

    def test_rejects_bad_attack_lines(self):
        with pytest.raises(ParseError, match="2 tokens"):
            parse_iccma("p af 2\n1 2 3\n")
        with pytest.raises(ParseError, match="non-integer"):
            parse_iccma("p af 2\n1 b\n")
        with pytest.raises(ParseError, match="out of range"):
            parse_iccma("p af 2\n1 5\n")

    def test_error_carries_line_number(self):
        with pytest.raises(ParseError) as info:
            parse_iccma("p af 2\n1 2\nbroken line here\n")
        assert info.value.line == 3

    def test_round_trip(self, af_seven):
        assert parse_iccma(af_seven.to_iccma_text()) == af_seven


class TestApxParsing:
    TEXT = "arg(a).\narg(b).\narg(c).\natt(a,b).\natt(b,c).\n"

    def test_parses_names(self):
        af = parse_apx(self.TEXT)
        assert af.n == 3
        assert af.names == ("a", "b", "c")
        assert af.attacks == ((1, 2), (2, 3))

    def test_resolve_by_name_and_id(self):
        af = parse_apx(self.TEXT)
        assert af.resolve("b") == 2
        assert af.resolve("2") == 2
        with pytest.raises(ValueError, match="unknown argument"):
            af.resolve("zz")
        with pytest.raises(ValueError, match="out of range"):
            af.resolve("9")

    def test_name_of(self):
        af = parse_apx(self.TEXT)
        assert af.name_of(3) == "c"
        unnamed = parse_iccma("p af 2\n")
        assert unnamed.name_of(2) == "2"
        assert unnamed.names is None

    def test_tolerates_whitespace_and_duplicates(self):
        af = parse_apx("arg( a ).\narg(a).\natt( a , a ).\n")
        assert af.n == 1
        assert af.attacks == ((1, 1),)

    def test_rejects_undeclared_use(self):
        with pytest.raises(ParseError, match="undeclared"):
            parse_apx("arg(a).\natt(a,b).\n")
        with pytest.raises(ParseError, match="undeclared"):
            parse_apx("att(a,a).\narg(a).\n")

    def test_rejects_malformed_lines(self):
        with pytest.raises(ParseError, match="malformed"):
            parse_apx("arg(a)\n")
        with pytest.raises(ParseError, match="no arguments"):
            parse_apx("\n\n")

    def test_round_trip(self):
        af = parse_apx(self.TEXT)
        again = parse_apx(af.to_apx_text())
        assert again == af
        assert again.names == af.names


class TestLoadFramework:
    def test_both_formats(self, tmp_path, af_seven):
        iccma = tmp_path / "f.af"
        iccma.write_text(af_seven.to_iccma_text())
        apx = tmp_path / "f.apx"
        apx.write_text(af_seven.to_apx_text())
        assert load_framework(iccma) == af_seven
        assert load_framework(apx, "apx") == af_seven

    def test_unknown_format(self, tmp_path):
        path = tmp_path / "f.af"
        path.write_text("p af 1\n")
        with pytest.raises(ValueError, match="unsupported format"):
            load_framework(path, "tgf")

    def test_formats_constant(self):
        assert FORMATS == ("iccma23", "apx")
