"""The uniform puzzle facade shared by agents, orchestrator, and CLI."""

import pytest

from puzzlebench.errors import MoveError
from puzzlebench.hanoi import HanoiConfig, HanoiMove
from puzzlebench.puzzles import HanoiPuzzle, RiverPuzzle, moves_to_text, replay
from puzzlebench.river import RiverConfig, SafetyScope


@pytest.fixture
def hanoi3():
    return HanoiPuzzle(HanoiConfig(n_disks=3))


@pytest.fixture
def river2():
    return RiverPuzzle(RiverConfig(n_pairs=2, boat_capacity=2))


class TestFacade:
    def test_kinds(self, hanoi3, river2):
        assert hanoi3.kind == "hanoi"
        assert river2.kind == "river"

    def test_reference_solutions_reach_goal(self, hanoi3, river2):
        for puzzle in (hanoi3, river2):
            final, applied, error = replay(puzzle, puzzle.reference_solution().moves)
            assert error is None
            assert puzzle.is_goal(final)
            assert applied == puzzle.min_solution_length()

    def test_min_lengths(self, hanoi3, river2):
        assert hanoi3.min_solution_length() == 7
        assert river2.min_solution_length() == 5

    def test_river_min_length_none_when_unsolvable(self):
        puzzle = RiverPuzzle(RiverConfig(n_pairs=6, boat_capacity=3))
        assert puzzle.min_solution_length() is None
        with pytest.raises(ValueError):
            puzzle.reference_solution()

    def test_parse_dispatch(self, hanoi3, river2):
        assert hanoi3.extract_moves("moves = [[1, 0, 2]]").moves == [HanoiMove(1, 0, 2)]
        assert len(river2.extract_moves('moves = [["A_1", "a_1"]]').moves) == 1


class TestPoisonMoves:
    def test_hanoi_poison_parses_but_never_applies(self, hanoi3):
        poison = hanoi3.poison_move()
        text = moves_to_text(hanoi3, [poison])
        assert hanoi3.extract_moves(text).moves == [poison]
        state = hanoi3.initial_state()
        with pytest.raises(MoveError):
            hanoi3.apply(state, poison)

    def test_hanoi_poison_illegal_in_every_reachable_state(self):
        # Disk N+1 exists nowhere, so the move fails regardless of position.
        puzzle = HanoiPuzzle(HanoiConfig(n_disks=2))
        poison = puzzle.poison_move()
        state = puzzle.initial_state()
        seen = {state}
        frontier = [state]
        while frontier:
            current = frontier.pop()
            with pytest.raises(MoveError):
                puzzle.apply(current, poison)
            for move in puzzle.legal_moves(current):
                successor = puzzle.apply(current, move)
                if successor not in seen:
                    seen.add(successor)
                    frontier.append(successor)
        assert len(seen) == 9  # 3^2 states for 2 disks

    def test_river_poison_parses_but_never_applies(self, river2):
        poison = river2.poison_move()
        text = moves_to_text(river2, [poison])
        assert river2.extract_moves(text).moves == [poison]
        with pytest.raises(MoveError):
            river2.apply(river2.initial_state(), poison)


class TestReplay:
    def test_clean_replay(self, hanoi3):
        final, applied, error = replay(hanoi3, [HanoiMove(1, 0, 2), HanoiMove(2, 0, 1)])
        assert (applied, error) == (2, None)
        assert final.pegs == ((3,), (2,), (1,))

    def test_fail_fast_replay(self, hanoi3):
        moves = [HanoiMove(1, 0, 2), HanoiMove(3, 0, 1), HanoiMove(2, 0, 1)]
        final, applied, error = replay(hanoi3, moves)
        assert applied == 1
        assert isinstance(error, MoveError)
        assert final.pegs == ((3, 2), (), (1,))


class TestTextForm:
    def test_moves_to_text_round_trips_through_parser(self, hanoi3, river2):
        for puzzle in (hanoi3, river2):
            moves = list(puzzle.reference_solution().moves)
            outcome = puzzle.extract_moves(moves_to_text(puzzle, moves))
            assert outcome.moves == moves

    def test_canonical_prefix(self, hanoi3):
        assert moves_to_text(hanoi3, [HanoiMove(1, 0, 2)]) == "moves = [[1, 0, 2]]"


class TestPromptBindings:
    def test_hanoi_bindings(self, hanoi3):
        assert hanoi3.prompt_bindings() == {"n": 3, "source_peg": 0, "target_peg": 2}

    def test_river_bindings_mention_boat_under_default_scope(self, river2):
        bindings = river2.prompt_bindings()
        assert bindings["n"] == 2
        assert bindings["k"] == 2
        assert "boat" in bindings["boat_rule"]

    def test_river_bindings_banks_only(self):
        puzzle = RiverPuzzle(
            RiverConfig(n_pairs=2, boat_capacity=2, safety_scope=SafetyScope.BANKS_ONLY)
        )
        assert puzzle.prompt_bindings()["boat_rule"] == ""
