import pytest

from qfridge.models.params import DissipationModel
from qfridge.services.rates import rates
from qfridge.services.transcription import compare_transcription, mismatched_rows, transcribed_w

# rows whose printed coefficients disagree with the generator
SEPARATE_ROWS = {"p010", "p101", "c_R", "c_I"}
COMMON_ROWS = SEPARATE_ROWS | {"p000", "p001", "p110", "p111"}


def test_mismatches_without_common_bath(make_w):
    entries = compare_transcription(make_w(0.0))
    assert mismatched_rows(entries) == SEPARATE_ROWS


@pytest.mark.parametrize("alpha", [0.3, 0.5, 0.9])
def test_mismatches_with_common_bath(make_w, alpha):
    entries = compare_transcription(make_w(alpha))
    assert mismatched_rows(entries) == COMMON_ROWS


def test_single_flip_rows_always_agree(make_w):
    for alpha in (0.0, 0.5):
        rows = {e.row for e in compare_transcription(make_w(alpha)) if e.match}
        assert {"p100", "p011"} <= rows


def test_printed_exchange_terms_are_imaginary(machine, baths):
    printed = transcribed_w(rates(machine, baths), 0.0, machine.g)
    assert printed.dtype == complex
    # the c_I coefficients carry a stray factor i
    assert printed[5, 9] == pytest.approx(-2j * machine.g)
    assert printed[9, 5] == pytest.approx(1j * machine.g)


def test_entry_serialization(make_w):
    entry = compare_transcription(make_w(0.2, DissipationModel.COHERENT))[0]
    assert set(entry.to_dict()) == {"row", "col", "printed_re", "printed_im", "derived", "match"}
