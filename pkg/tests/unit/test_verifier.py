"""
Unit tests for numeric verification and post-editing.
"""

import logging

import pytest

from numtrans_py.formatter import render_forms, render_large_unit
from numtrans_py.models import (
    CanonicalNumeral,
    Direction,
    Language,
    NumericPair,
    Span,
    SpannedExpression,
    Verdict,
    VerdictKind,
)
from numtrans_py.numeral import NumericValue
from numtrans_py.parsers import parse_number, scan
from numtrans_py.pipeline import (
    apply_edits,
    check_translation,
    post_edit,
    render_replacement,
    verify_pair,
)

EN, ZH = Language.EN, Language.ZH

ZH_TEMPLATE = "公司收入达到{}美元。"
EN_TEMPLATE = "The company's revenue reached ${}."
# Unit slips: 十 vs ten, 千 vs thousand, 万 vs 亿
CORRUPTIONS = (10, "0.1", 1000, "0.001", 10000, "0.0001")


def expr(text: str, lang: Language, start: int = 0) -> SpannedExpression:
    return SpannedExpression(Span(start, start + len(text)), text, parse_number(text, lang))


def amounts():
    """d * 10^k for a spread of mantissas and units."""
    for d in (1, 2, 7, 15, 28, 50, 134, 282, 350, 999):
        for k in range(4, 11):
            yield NumericValue.of(d).scaled(k)


def corruptions(value: NumericValue):
    """Wrong values a translation may carry: unit slips and a dropped leading digit."""
    for factor in CORRUPTIONS:
        yield value * NumericValue.of(factor)
    digits = str(value.significand)
    if len(digits) > 1:
        yield NumericValue.from_parts(False, int(digits[1:]), value.exponent)


def random_scalar(rng) -> NumericValue:
    if rng.random() < 0.5:
        return NumericValue.from_scaled_int(rng.randint(1, 10 ** 7), -rng.randint(0, 3))
    return NumericValue.from_scaled_int(rng.randint(1, 9999), rng.randint(4, 10))


def random_expr(rng, canonical: CanonicalNumeral, lang: Language) -> SpannedExpression:
    """canonical written in one of its accepted spellings."""
    return expr(rng.choice(sorted(render_forms(canonical, lang))), lang)


def sentence(template: str, value: NumericValue, lang: Language) -> str:
    return template.format(render_large_unit(CanonicalNumeral.scalar(value), lang))


class TestVerifyPair:
    """Test cases for verify_pair."""

    def test_off_by_ten_is_mismatch(self):
        """1000亿 against '10 billion' is a mismatch expecting the source."""
        pair = verify_pair(NumericPair(expr("1000亿", ZH), expr("10 billion", EN)))
        assert pair.verdict.kind is VerdictKind.MISMATCH
        assert pair.verdict.expected == CanonicalNumeral.scalar(100000000000)

    def test_unit_spellings_match(self):
        """Different unit spellings of one value match."""
        pair = verify_pair(NumericPair(expr("72.2 billion", EN), expr("722亿", ZH)))
        assert pair.verdict == Verdict.match()

    def test_number_string_needs_its_literal(self):
        """A regrouped ID number is a mismatch."""
        pair = verify_pair(NumericPair(expr("00326264", ZH), expr("00,326,264", EN)))
        assert pair.verdict.kind is VerdictKind.MISMATCH
        assert pair.verdict.expected == CanonicalNumeral.number_string("00326264")

    def test_number_string_literal_copy_matches(self):
        """A verbatim ID number matches."""
        pair = verify_pair(NumericPair(expr("01074316-002", EN), expr("01074316-002", ZH)))
        assert pair.verdict.kind is VerdictKind.MATCH

    def test_fold_matches_plain_count(self):
        """'three-fold' matches a plain 3."""
        pair = verify_pair(NumericPair(expr("three-fold", EN), expr("3", ZH)))
        assert pair.verdict.kind is VerdictKind.MATCH

    def test_one_sided_pairs(self):
        """Missing source or target gives spurious or omitted."""
        seven = expr("7", EN)
        assert verify_pair(NumericPair(None, seven)).verdict.kind is VerdictKind.SPURIOUS
        assert verify_pair(NumericPair(seven, None)).verdict.kind is VerdictKind.OMITTED

    def test_unparsed_sides_are_unverifiable(self):
        """Unparsed sides are unverifiable and say which side."""
        broken = SpannedExpression(None, "lots", None, error="unparseable: lots")
        seven = expr("7", EN)
        verdict = verify_pair(NumericPair(broken, seven)).verdict
        assert verdict.kind is VerdictKind.UNVERIFIABLE
        assert "source" in verdict.reason
        verdict = verify_pair(NumericPair(seven, broken)).verdict
        assert verdict.kind is VerdictKind.UNVERIFIABLE
        assert "target" in verdict.reason

    def test_scalar_verdicts_ignore_direction(self, rng):
        """Swapping source and target of a scalar pair keeps its verdict."""
        for _ in range(500):
            value = random_scalar(rng)
            if rng.random() < 0.5:
                other = value
            else:
                other = value * NumericValue.of(rng.choice((10, "0.1", 10000, "0.0001", -1)))
            left = random_expr(rng, CanonicalNumeral.scalar(value), rng.choice((EN, ZH)))
            right = random_expr(rng, CanonicalNumeral.scalar(other), rng.choice((EN, ZH)))
            forward = verify_pair(NumericPair(left, right)).verdict
            backward = verify_pair(NumericPair(right, left)).verdict
            assert forward.kind is backward.kind, (left.surface, right.surface)
            assert (forward.kind is VerdictKind.MATCH) == (value == other)
            if forward.kind is VerdictKind.MISMATCH:
                assert forward.expected == left.canonical
                assert backward.expected == right.canonical


class TestApplyEdits:
    """Test cases for apply_edits and render_replacement."""

    def test_rewrites_right_to_left(self):
        """Mismatched spans are rewritten without shifting later spans."""
        target = "from 3 to 40 and 500"
        pairs = [
            NumericPair(expr("4", EN), expr("3", EN, 5), Verdict.mismatch(CanonicalNumeral.scalar(4))),
            NumericPair(expr("4", EN), expr("40", EN, 10), Verdict.match()),
            NumericPair(expr("6", EN), expr("500", EN, 17), Verdict.mismatch(CanonicalNumeral.scalar(60000))),
        ]
        edited, count = apply_edits(target, pairs, EN)
        assert edited == "from 4 to 40 and 60,000"
        assert count == 2

    def test_large_unit_style(self):
        """The style picks unit or digit rendering of scalars."""
        expected = CanonicalNumeral.scalar(13400000000)
        assert render_replacement(expected, EN, "large_unit") == "13.4 billion"
        assert render_replacement(expected, EN, "digits") == "13,400,000,000"
        assert render_replacement(expected, ZH, "large_unit") == "134亿"

    def test_non_scalars_use_digits_in_both_styles(self):
        """Ranges keep digit rendering under large_unit."""
        expected = CanonicalNumeral.range(300, 500)
        assert render_replacement(expected, ZH, "large_unit") == "300-500"

    def test_formula_falls_back_to_shortest_form(self):
        """Formulas are written in their shortest form."""
        assert render_replacement(CanonicalNumeral.formula([1, 1], ["+"]), EN) == "1+1"


class TestPostEdit:
    """Test cases for post_edit."""

    def test_company_report_large_unit(self, report_pair):
        """Three wrong amounts are rewritten with units."""
        source, target, direction = report_pair
        report = post_edit(source, target, direction, style="large_unit")
        assert report.edit_count == 3
        assert report.unresolved == 0
        assert report.edited == (
            "A company's revenue last year exceeded $100 billion, net profit reached $50 million, "
            "and total assets reached $350 billion, including $13.4 billion in cash reserves."
        )
        assert report.count(VerdictKind.MATCH) == 1
        assert report.count(VerdictKind.MISMATCH) == 3

    def test_company_report_digits(self, report_pair):
        """Three wrong amounts are rewritten as grouped digits."""
        source, target, direction = report_pair
        report = post_edit(source, target, direction)
        assert "$100,000,000,000" in report.edited
        assert "$13,400,000,000" in report.edited
        assert "$50 million" in report.edited

    def test_correct_translation_is_a_fixpoint(self, funding_pair):
        """A correct translation is returned unchanged."""
        source, target, direction = funding_pair
        report = post_edit(source, target, direction, style="large_unit")
        assert report.edit_count == 0
        assert report.edited == target
        assert [p.verdict.kind for p in report.pairs] == [VerdictKind.MATCH, VerdictKind.MATCH]

    def test_second_pass_changes_nothing(self, report_pair):
        """Post-editing an edited translation changes nothing."""
        source, target, direction = report_pair
        for style in ("digits", "large_unit"):
            once = post_edit(source, target, direction, style=style)
            twice = post_edit(source, once.edited, direction, style=style)
            assert twice.edit_count == 0
            assert twice.edited == once.edited

    def test_omissions_are_reported_not_rewritten(self):
        """A dropped number is reported but the text is kept."""
        report = post_edit("收入1000亿美元，利润50亿美元。","Revenue was 100 billion.", "zh-en")
        assert report.edited == "Revenue was 100 billion."
        assert report.edit_count == 0
        assert report.unresolved == 1
        assert report.count(VerdictKind.OMITTED) == 1

    @pytest.mark.parametrize("source,target,direction", [
        ("收入48000.4美元", "Revenue was forty-eight thousand point four dollars", "zh-en"),
        ("2.5 percent of the votes were invalid.", "百分之2.5的选票无效。", "en-zh"),
        ("利润增长了百分之五。", "Profit grew by 5%.", "zh-en"),
        ("利润增长了百分之五。", "Profit grew by five percent.", "zh-en"),
    ])
    def test_faithful_spellings_are_kept(self, source, target, direction):
        """Decimals after scale words and percentages match their source."""
        report = post_edit(source, target, direction)
        assert report.edit_count == 0
        assert report.edited == target
        assert [p.verdict.kind for p in report.pairs] == [VerdictKind.MATCH]

    @pytest.mark.parametrize("source,target,direction,edited", [
        ("利润增长了百分之五。", "Profit grew by 6%.", "zh-en", "Profit grew by 5%."),
        ("Profit grew by 5 percent.", "利润增长了百分之六。", "en-zh", "利润增长了5%。"),
    ])
    def test_wrong_percentage_is_rewritten_as_percentage(self, source, target, direction, edited):
        """A mismatched percentage is replaced by the source percentage."""
        report = post_edit(source, target, direction)
        assert report.edit_count == 1
        assert report.edited == edited

    def test_idiom_is_not_paired_with_a_number(self):
        """十分 means 'very'; it must not be rewritten into the English 'one'."""
        target = "They were very happy, one of them said."
        report = post_edit("他们十分高兴。", target, "zh-en")
        assert report.edit_count == 0
        assert report.edited == target
        assert report.count(VerdictKind.MISMATCH) == 0

    def test_summary_is_logged(self, report_pair, caplog):
        """Each run logs the pipeline's status summary at debug level."""
        with caplog.at_level(logging.DEBUG, logger="numtrans_py.pipeline.verifier"):
            post_edit(*report_pair)
        summary = [r.getMessage() for r in caplog.records if r.getMessage().startswith("post_edit:")]
        assert len(summary) == 1
        assert "'status': 'completed'" in summary[0]
        assert "'verdicts': {'match': 1, 'mismatch': 3}" in summary[0]

    def test_sentence_without_numbers(self):
        """Sentences without numbers yield no pairs."""
        report = post_edit("今天天气很好", "The weather is nice today.", Direction.ZH_EN)
        assert report.pairs == []
        assert report.edited == "The weather is nice today."

    def test_unknown_style(self, report_pair):
        """An unknown style raises ValueError."""
        with pytest.raises(ValueError):
            post_edit(*report_pair, style="roman")

    def test_unknown_extractor(self, report_pair):
        """An unknown extractor raises ValueError."""
        with pytest.raises(ValueError):
            post_edit(*report_pair, extractor="oracle")

    def test_check_translation(self, funding_pair):
        """check_translation verifies every extracted pair."""
        pairs = check_translation(*funding_pair)
        assert all(p.verdict.kind is VerdictKind.MATCH for p in pairs)


class TestCorruptedAmounts:
    """Single corrupted amounts are always found and restored."""

    @pytest.mark.parametrize("direction,source_template,target_template", [
        (Direction.ZH_EN, ZH_TEMPLATE, EN_TEMPLATE),
        (Direction.EN_ZH, EN_TEMPLATE, ZH_TEMPLATE),
    ])
    def test_restores_source_value(self, direction, source_template, target_template):
        """Every corruption is fixed in one edit and stays fixed."""
        checked = 0
        for value in amounts():
            source = sentence(source_template, value, direction.source)
            for wrong in corruptions(value):
                target = sentence(target_template, wrong, direction.target)
                report = post_edit(source, target, direction, style="large_unit")
                assert report.edit_count == 1, (source, target)

                found = scan(report.edited, direction.target)
                assert [e.canonical for e in found] == [CanonicalNumeral.scalar(value)], report.edited

                again = post_edit(source, report.edited, direction, style="large_unit")
                assert again.edit_count == 0
                assert again.edited == report.edited
                checked += 1
        assert checked == 462

    def test_faithful_targets_are_untouched(self):
        """Correct renderings of every amount are left alone."""
        for value in amounts():
            source = sentence(ZH_TEMPLATE, value, ZH)
            target = sentence(EN_TEMPLATE, value, EN)
            report = post_edit(source, target, Direction.ZH_EN, style="large_unit")
            assert report.edit_count == 0
            assert report.edited == target
