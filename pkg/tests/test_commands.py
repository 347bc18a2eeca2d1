import pytest

from ugvsim.channel import ChannelConfig, RfLink
from ugvsim.commands import (
    COMMAND_SYMBOLS,
    Command,
    decode_command,
    encode_command,
    is_navigation,
    parse_command_name,
    parse_script,
)
from ugvsim.dtmf import decode_stream, synthesize_symbol


def test_mapping_table():
    assert encode_command(Command.FORWARD) == "2"
    assert encode_command(Command.LEFT) == "4"
    assert encode_command(Command.STOP) == "5"
    assert encode_command(Command.RIGHT) == "6"
    assert encode_command(Command.BACKWARD) == "8"
    assert encode_command(Command.SEARCHLIGHT_ON) == "1"
    assert encode_command(Command.SEARCHLIGHT_OFF) == "3"


def test_symbols_pairwise_distinct():
    symbols = [encode_command(c) for c in Command]
    assert len(symbols) == 7
    assert len(set(symbols)) == 7


def test_round_trip_all_variants():
    for cmd in Command:
        assert decode_command(encode_command(cmd)) is cmd


def test_unmapped_symbols_decode_to_none():
    mapped = set(COMMAND_SYMBOLS.values())
    for sym in "0123456789ABCD*#":
        got = decode_command(sym)
        if sym in mapped:
            assert got is not None
        else:
            assert got is None
    assert decode_command("#") is None
    assert decode_command("4") is Command.LEFT


def test_is_navigation():
    assert is_navigation(Command.FORWARD)
    assert is_navigation(Command.STOP)
    assert not is_navigation(Command.SEARCHLIGHT_ON)
    assert not is_navigation(Command.SEARCHLIGHT_OFF)
    assert sum(is_navigation(c) for c in Command) == 5


@pytest.mark.parametrize("cmd", list(Command))
def test_command_survives_noisy_link(cmd):
    # full path: encode -> synthesize -> AWGN channel -> decode_stream -> decode
    tone = synthesize_symbol(encode_command(cmd))
    for seed in range(20):
        link = RfLink(ChannelConfig(drop_probability=0.0, snr_db=20.0, seed=seed))
        symbols = decode_stream(link.transmit_audio(tone).samples)
        assert [decode_command(s) for s in symbols] == [cmd]


class TestNames:
    def test_wire_names(self):
        assert parse_command_name("light_on") is Command.SEARCHLIGHT_ON
        assert parse_command_name("forward") is Command.FORWARD

    def test_variant_names_case_insensitive(self):
        assert parse_command_name("Forward") is Command.FORWARD
        assert parse_command_name("SEARCHLIGHTOFF") is Command.SEARCHLIGHT_OFF
        assert parse_command_name("  stop ") is Command.STOP

    def test_unknown_name(self):
        with pytest.raises(ValueError):
            parse_command_name("warp")


class TestScript:
    def test_basic(self):
        script = parse_script("0.0,forward\n5.0,stop\n")
        assert script == [(0.0, Command.FORWARD), (5.0, Command.STOP)]

    def test_header_comments_and_sorting(self):
        text = "time_s,command\n# bring it home\n9.5,stop\n1.0,Backward\n\n"
        assert parse_script(text) == [(1.0, Command.BACKWARD), (9.5, Command.STOP)]

    def test_bad_rows(self):
        with pytest.raises(ValueError):
            parse_script("abc,forward\n")
        with pytest.raises(ValueError):
            parse_script("-1.0,forward\n")
        with pytest.raises(ValueError):
            parse_script("1.0\n")
        with pytest.raises(ValueError):
            parse_script("1.0,flip\n")
