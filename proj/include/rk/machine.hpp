#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rk/name.hpp"
#include "rk/ordinal.hpp"

namespace rk {

struct Realizer;

enum class TapeRole { INPUT, ORACLE, SCRATCH, OUTPUT };
enum class Move { LEFT, RIGHT, STAY };

/// A kappa-Turing machine program.
///
/// Text format, '#' starts a comment:
///   tapes: input scratch output      roles in tape order; at most one input and
///                                    one oracle, exactly one output
///   states: q0 q1 done               declaration order is the order used for
///                                    the state at limit stages (least first)
///   initial: q0
///   halting: done
///   q0 1 * * -> q1 - 1 0 R R S       state, one read symbol per tape (0, 1,
///                                    or * for any), new state, one write symbol
///                                    per tape (0, 1, or - for none), one move
///                                    per tape (L, R, S)
/// The output tape cannot be read and input/oracle tapes cannot be written.
/// Exactly one transition must match every readable combination in every
/// non-halting state.
struct Program {
  struct Transition {
    std::size_t from;
    std::string read;  // per tape: '0', '1', '*'
    std::size_t to;
    std::string write;  // per tape: '0', '1', '-'
    std::vector<Move> moves;
  };

  std::vector<TapeRole> tapes;
  std::vector<std::string> states;
  std::size_t initial = 0;
  std::vector<bool> halting;
  std::vector<Transition> transitions;

  static Program parse(const std::string& text);
  std::string str() const;
  std::size_t state_index(const std::string& name) const;
  std::size_t output_tape() const;
  std::optional<std::size_t> tape_with(TapeRole role) const;
  /// The transition for `state` reading `bits` (one per tape, output ignored).
  const Transition& lookup(std::size_t state, const std::string& bits) const;
};

/// Input and oracle tapes are backed by names.
struct MachineIO {
  std::optional<Name> input;
  std::optional<Name> oracle;
};

struct Configuration {
  std::size_t state = 0;
  std::vector<Ordinal> heads;
  /// Positions holding 1, for scratch and output tapes (empty for the others).
  std::vector<std::set<Ordinal>> ones;
  /// Output cells written so far.
  std::set<Ordinal> written;
  std::size_t output_tape = 0;
  Ordinal stage;

  static Configuration initial(const Program& p);
  bool cell(std::size_t tape, const Ordinal& pos) const { return ones[tape].count(pos) > 0; }
  /// Equal apart from the stage.
  bool same_snapshot(const Configuration& o) const;
  std::string output_prefix(std::size_t n) const;
  std::string to_json(const Program& p) const;
};

/// One classical step. Moving left from 0 or from a limit position goes to 0.
/// HaltedMachine if c is halted; Error if an output cell would change.
Configuration step(const Configuration& c, const Program& p, const MachineIO& io);

enum class Outcome { HALTED, FUEL_EXHAUSTED };

struct RunResult {
  Configuration config;
  Outcome outcome;
};

RunResult run(const Program& p, const MachineIO& io, std::size_t fuel);
RunResult run_from(const Configuration& start, const Program& p, const MachineIO& io, std::size_t fuel);

/// Stage lambda configuration from the configurations of one period of an
/// exact cycle: cells are 1 only if 1 throughout, heads and state take the
/// least value in the period.
Configuration limit_snapshot(const std::vector<Configuration>& period, const Ordinal& lambda);

/// Runs from `start` looking for an exact configuration cycle within `fuel`
/// steps and returns the configuration at the next limit stage.
/// NoCycleDetected otherwise (also if the machine halts).
Configuration advance_to_limit(const Configuration& start, const Program& p, const MachineIO& io,
                               std::size_t fuel);

/// Runs until output cells 0..n-1 are all written and returns them.
/// FuelExhausted if that does not happen within `fuel` steps.
std::string t2_output(const Program& p, const MachineIO& io, std::size_t n, std::size_t fuel);

/// Writes one JSON line per step: stage, state, heads and the cells written.
RunResult trace(const Program& p, const MachineIO& io, std::size_t fuel, std::ostream& out);

/// The type-two function computed by a one-input program: output bit n is
/// read after t2_output produces n+1 cells. Finite positions only.
Realizer program_realizer(const Program& p, std::size_t fuel = 100000);

}  // namespace rk
