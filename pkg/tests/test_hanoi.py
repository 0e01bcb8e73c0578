"""Towers of Hanoi engine: rules, rejection reasons, encodings."""

import pytest

from puzzlebench import errors
from puzzlebench.errors import MoveError
from puzzlebench.hanoi import (
    HanoiConfig,
    HanoiMove,
    HanoiState,
    apply_move,
    initial_state,
    is_goal,
    legal_moves,
    move_from_json,
    move_to_json,
    render_state,
    state_from_json,
    state_to_json,
)


class TestConfig:
    def test_defaults(self):
        config = HanoiConfig(n_disks=3)
        assert config.source_peg == 0
        assert config.target_peg == 2
        assert config.spare_peg == 1

    def test_spare_peg_for_other_pairs(self):
        assert HanoiConfig(3, source_peg=1, target_peg=2).spare_peg == 0
        assert HanoiConfig(3, source_peg=0, target_peg=1).spare_peg == 2

    def test_rejects_bad_values(self):
        with pytest.raises(ValueError):
            HanoiConfig(n_disks=0)
        with pytest.raises(ValueError):
            HanoiConfig(n_disks=3, source_peg=3)
        with pytest.raises(ValueError):
            HanoiConfig(n_disks=3, source_peg=2, target_peg=2)


class TestState:
    def test_initial_state_stacks_source(self):
        state = initial_state(HanoiConfig(n_disks=4))
        assert state.pegs == ((4, 3, 2, 1), (), ())
        assert state.n_disks == 4

    def test_rejects_duplicate_disks(self):
        with pytest.raises(ValueError):
            HanoiState(pegs=((2, 1), (1,), ()))

    def test_rejects_disk_gap(self):
        with pytest.raises(ValueError):
            HanoiState(pegs=((3, 1), (), ()))

    def test_rejects_larger_on_smaller(self):
        with pytest.raises(ValueError):
            HanoiState(pegs=((1, 2), (), (3,)))

    def test_states_are_values(self):
        a = HanoiState(pegs=((2, 1), (), (3,)))
        b = HanoiState(pegs=((2, 1), (), (3,)))
        assert a == b
        assert hash(a) == hash(b)


class TestApplyMove:
    def test_legal_move(self):
        state = initial_state(HanoiConfig(n_disks=2))
        after = apply_move(state, HanoiMove(1, 0, 2))
        assert after.pegs == ((2,), (), (1,))

    def test_input_state_unchanged(self):
        state = initial_state(HanoiConfig(n_disks=2))
        apply_move(state, HanoiMove(1, 0, 1))
        assert state.pegs == ((2, 1), (), ())

    def test_empty_source(self):
        state = initial_state(HanoiConfig(n_disks=2))
        with pytest.raises(MoveError) as excinfo:
            apply_move(state, HanoiMove(1, 1, 2))
        assert excinfo.value.reason == errors.EMPTY_SOURCE

    def test_wrong_disk(self):
        state = initial_state(HanoiConfig(n_disks=3))
        with pytest.raises(MoveError) as excinfo:
            apply_move(state, HanoiMove(3, 0, 2))
        assert excinfo.value.reason == errors.WRONG_DISK

    def test_size_violation(self):
        state = apply_move(initial_state(HanoiConfig(n_disks=2)), HanoiMove(1, 0, 2))
        with pytest.raises(MoveError) as excinfo:
            apply_move(state, HanoiMove(2, 0, 2))
        assert excinfo.value.reason == errors.SIZE_VIOLATION

    def test_bad_peg_out_of_range(self):
        state = initial_state(HanoiConfig(n_disks=1))
        with pytest.raises(MoveError) as excinfo:
            apply_move(state, HanoiMove(1, 0, 3))
        assert excinfo.value.reason == errors.BAD_PEG

    def test_bad_peg_self_move(self):
        state = initial_state(HanoiConfig(n_disks=1))
        with pytest.raises(MoveError) as excinfo:
            apply_move(state, HanoiMove(1, 0, 0))
        assert excinfo.value.reason == errors.BAD_PEG

    def test_nonexistent_disk_is_rejected(self):
        # The standard poison move: disk N+1 exists in no state.
        state = initial_state(HanoiConfig(n_disks=3))
        with pytest.raises(MoveError) as excinfo:
            apply_move(state, HanoiMove(4, 0, 1))
        assert excinfo.value.reason == errors.WRONG_DISK


class TestGoalAndMoves:
    def test_goal_detection(self):
        config = HanoiConfig(n_disks=2)
        assert not is_goal(initial_state(config), config)
        done = HanoiState(pegs=((), (), (2, 1)))
        assert is_goal(done, config)

    def test_goal_respects_target_peg(self):
        config = HanoiConfig(n_disks=2, source_peg=0, target_peg=1)
        on_wrong_peg = HanoiState(pegs=((), (), (2, 1)))
        assert not is_goal(on_wrong_peg, config)
        assert is_goal(HanoiState(pegs=((), (2, 1), ())), config)

    def test_initial_state_has_two_moves(self):
        state = initial_state(HanoiConfig(n_disks=3))
        assert legal_moves(state) == [HanoiMove(1, 0, 1), HanoiMove(1, 0, 2)]

    def test_legal_moves_midgame(self):
        state = HanoiState(pegs=((3,), (2,), (1,)))
        moves = legal_moves(state)
        # Disk 1 can go anywhere, disk 2 only onto disk 3's peg.
        assert HanoiMove(1, 2, 0) in moves
        assert HanoiMove(1, 2, 1) in moves
        assert HanoiMove(2, 1, 0) in moves
        assert HanoiMove(2, 1, 2) not in moves
        assert len(moves) == 3

    def test_every_legal_move_applies(self):
        state = HanoiState(pegs=((3,), (2,), (1,)))
        for move in legal_moves(state):
            apply_move(state, move)


class TestRendering:
    def test_render_lists_pegs_bottom_to_top(self):
        state = HanoiState(pegs=((3, 2), (), (1,)))
        assert render_state(state) == "Peg 0: [3, 2]\nPeg 1: []\nPeg 2: [1]"


class TestJson:
    def test_state_round_trip(self):
        state = HanoiState(pegs=((3,), (2,), (1,)))
        encoded = state_to_json(state)
        assert encoded == [[3], [2], [1]]
        assert state_from_json(encoded) == state

    def test_state_from_json_rejects_shapes(self):
        with pytest.raises(ValueError):
            state_from_json([[1], [2]])
        with pytest.raises(ValueError):
            state_from_json({"pegs": []})
        with pytest.raises(ValueError):
            state_from_json([["1"], [], []])

    def test_move_round_trip(self):
        move = HanoiMove(2, 0, 1)
        assert move_to_json(move) == [2, 0, 1]
        assert move_from_json([2, 0, 1]) == move

    def test_move_from_json_rejects_bad_shapes(self):
        for bad in ([1, 2], [1, 2, 3, 4], ["1", 0, 2], [True, 0, 2], "move"):
            with pytest.raises(ValueError):
                move_from_json(bad)
