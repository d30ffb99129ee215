#include "rk/machine.hpp"

#include <algorithm>
#include <mutex>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "rk/errors.hpp"
#include "rk/reductions.hpp"

namespace rk {

// ------------------------------------------------------------------ program

namespace {

std::vector<std::string> split(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

TapeRole parse_role(const std::string& w) {
  if (w == "input") return TapeRole::INPUT;
  if (w == "oracle") return TapeRole::ORACLE;
  if (w == "scratch") return TapeRole::SCRATCH;
  if (w == "output") return TapeRole::OUTPUT;
  throw ParseError("unknown tape role '" + w + "'");
}

const char* role_name(TapeRole r) {
  switch (r) {
    case TapeRole::INPUT: return "input";
    case TapeRole::ORACLE: return "oracle";
    case TapeRole::SCRATCH: return "scratch";
    case TapeRole::OUTPUT: return "output";
  }
  return "?";
}

Move parse_move(const std::string& w) {
  if (w == "L") return Move::LEFT;
  if (w == "R") return Move::RIGHT;
  if (w == "S") return Move::STAY;
  throw ParseError("unknown move '" + w + "'");
}

char move_char(Move m) { return m == Move::LEFT ? 'L' : m == Move::RIGHT ? 'R' : 'S'; }

bool matches(const std::string& pattern, const std::string& bits) {
  for (std::size_t i = 0; i < pattern.size(); ++i)
    if (pattern[i] != '*' && pattern[i] != bits[i]) return false;
  return true;
}

}  // namespace

std::size_t Program::state_index(const std::string& name) const {
  auto it = std::find(states.begin(), states.end(), name);
  if (it == states.end()) throw ParseError("undeclared state '" + name + "'");
  return static_cast<std::size_t>(it - states.begin());
}

std::size_t Program::output_tape() const { return *tape_with(TapeRole::OUTPUT); }

std::optional<std::size_t> Program::tape_with(TapeRole role) const {
  for (std::size_t i = 0; i < tapes.size(); ++i)
    if (tapes[i] == role) return i;
  return std::nullopt;
}

Program Program::parse(const std::string& text) {
  Program p;
  std::optional<std::size_t> initial;
  std::istringstream in(text);
  std::size_t lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto words = split(line);
    if (words.empty()) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    const std::string& head = words[0];
    if (head == "tapes:") {
      for (std::size_t i = 1; i < words.size(); ++i) p.tapes.push_back(parse_role(words[i]));
    } else if (head == "states:") {
      p.states.assign(words.begin() + 1, words.end());
      p.halting.assign(p.states.size(), false);
    } else if (head == "initial:") {
      if (words.size() != 2) throw ParseError(where + "initial: takes one state");
      initial = p.state_index(words[1]);
    } else if (head == "halting:") {
      for (std::size_t i = 1; i < words.size(); ++i) p.halting[p.state_index(words[i])] = true;
    } else {
      const std::size_t t = p.tapes.size();
      if (t == 0) throw ParseError(where + "transition before 'tapes:'");
      if (words.size() != 3 * t + 3 || words[t + 1] != "->")
        throw ParseError(where + "expected 'state read x" + std::to_string(t) + " -> state write x" +
                         std::to_string(t) + " move x" + std::to_string(t) + "'");
      Transition tr;
      tr.from = p.state_index(words[0]);
      tr.to = p.state_index(words[t + 2]);
      for (std::size_t i = 0; i < t; ++i) {
        const std::string& r = words[1 + i];
        const std::string& w = words[t + 3 + i];
        if (r.size() != 1 || std::string("01*").find(r[0]) == std::string::npos)
          throw ParseError(where + "read symbol must be 0, 1 or *");
        if (w.size() != 1 || std::string("01-").find(w[0]) == std::string::npos)
          throw ParseError(where + "write symbol must be 0, 1 or -");
        if (p.tapes[i] == TapeRole::OUTPUT && r[0] != '*') throw ParseError(where + "the output tape is write-only");
        if ((p.tapes[i] == TapeRole::INPUT || p.tapes[i] == TapeRole::ORACLE) && w[0] != '-')
          throw ParseError(where + "input and oracle tapes are read-only");
        tr.read.push_back(r[0]);
        tr.write.push_back(w[0]);
        tr.moves.push_back(parse_move(words[2 * t + 3 + i]));
      }
      p.transitions.push_back(std::move(tr));
    }
  }
  if (p.states.empty()) throw ParseError("no 'states:' line");
  if (!initial) throw ParseError("no 'initial:' line");
  p.initial = *initial;
  if (std::count(p.tapes.begin(), p.tapes.end(), TapeRole::OUTPUT) != 1)
    throw ParseError("exactly one output tape is required");
  if (std::count(p.tapes.begin(), p.tapes.end(), TapeRole::INPUT) > 1 ||
      std::count(p.tapes.begin(), p.tapes.end(), TapeRole::ORACLE) > 1)
    throw ParseError("at most one input and one oracle tape");

  // Totality and determinism over every readable combination.
  std::vector<std::size_t> readable;
  for (std::size_t i = 0; i < p.tapes.size(); ++i)
    if (p.tapes[i] != TapeRole::OUTPUT) readable.push_back(i);
  if (readable.size() > 16) throw ParseError("too many readable tapes");
  for (std::size_t s = 0; s < p.states.size(); ++s) {
    if (p.halting[s]) continue;
    for (std::uint32_t mask = 0; mask < (1u << readable.size()); ++mask) {
      std::string bits(p.tapes.size(), '0');
      for (std::size_t k = 0; k < readable.size(); ++k) bits[readable[k]] = (mask >> k & 1) ? '1' : '0';
      int n = 0;
      for (auto& tr : p.transitions) n += tr.from == s && matches(tr.read, bits);
      if (n != 1)
        throw ParseError("state " + p.states[s] + " reading " + bits + ": " +
                         (n == 0 ? "no transition" : "more than one transition"));
    }
  }
  return p;
}

std::string Program::str() const {
  std::ostringstream out;
  out << "tapes:";
  for (auto r : tapes) out << ' ' << role_name(r);
  out << "\nstates:";
  for (auto& s : states) out << ' ' << s;
  out << "\ninitial: " << states[initial] << "\nhalting:";
  for (std::size_t s = 0; s < states.size(); ++s)
    if (halting[s]) out << ' ' << states[s];
  out << '\n';
  for (auto& tr : transitions) {
    out << states[tr.from];
    for (char c : tr.read) out << ' ' << c;
    out << " -> " << states[tr.to];
    for (char c : tr.write) out << ' ' << c;
    for (auto m : tr.moves) out << ' ' << move_char(m);
    out << '\n';
  }
  return out.str();
}

const Program::Transition& Program::lookup(std::size_t state, const std::string& bits) const {
  for (auto& tr : transitions)
    if (tr.from == state && matches(tr.read, bits)) return tr;
  throw ParseError("no transition for " + states[state] + " reading " + bits);
}

// ------------------------------------------------------------ configurations

Configuration Configuration::initial(const Program& p) {
  Configuration c;
  c.state = p.initial;
  c.heads.assign(p.tapes.size(), Ordinal(0));
  c.ones.assign(p.tapes.size(), {});
  c.output_tape = p.output_tape();
  return c;
}

bool Configuration::same_snapshot(const Configuration& o) const {
  return state == o.state && heads == o.heads && ones == o.ones && written == o.written;
}

std::string Configuration::output_prefix(std::size_t n) const {
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    const Ordinal pos(i);
    if (!written.count(pos)) break;
    out += cell(output_tape, pos) ? '1' : '0';
  }
  return out;
}

std::string Configuration::to_json(const Program& p) const {
  nlohmann::json j;
  j["stage"] = stage.str();
  j["state"] = p.states[state];
  j["heads"] = nlohmann::json::array();
  for (auto& h : heads) j["heads"].push_back(h.str());
  nlohmann::json tapes = nlohmann::json::object();
  for (std::size_t t = 0; t < ones.size(); ++t) {
    if (p.tapes[t] != TapeRole::SCRATCH && p.tapes[t] != TapeRole::OUTPUT) continue;
    auto cells = nlohmann::json::array();
    for (auto& pos : ones[t]) cells.push_back(pos.str());
    tapes[std::to_string(t)] = cells;
  }
  j["ones"] = tapes;
  return j.dump();
}

// ------------------------------------------------------------------- stepping

namespace {

struct Touched {
  std::size_t tape;
  Ordinal pos;
  bool bit;
};

std::string read_bits(const Configuration& c, const Program& p, const MachineIO& io) {
  std::string bits(p.tapes.size(), '0');
  for (std::size_t t = 0; t < p.tapes.size(); ++t) {
    bool b = false;
    switch (p.tapes[t]) {
      case TapeRole::INPUT: b = io.input && io.input->bit_at(c.heads[t]); break;
      case TapeRole::ORACLE: b = io.oracle && io.oracle->bit_at(c.heads[t]); break;
      case TapeRole::SCRATCH: b = c.cell(t, c.heads[t]); break;
      case TapeRole::OUTPUT: break;
    }
    bits[t] = b ? '1' : '0';
  }
  return bits;
}

Configuration apply(const Configuration& c, const Program& p, const MachineIO& io, std::vector<Touched>* touched) {
  if (p.halting[c.state]) throw HaltedMachine("machine halted in state " + p.states[c.state]);
  const auto& tr = p.lookup(c.state, read_bits(c, p, io));
  Configuration n = c;
  for (std::size_t t = 0; t < p.tapes.size(); ++t) {
    if (tr.write[t] == '-') continue;
    const bool bit = tr.write[t] == '1';
    const Ordinal& pos = c.heads[t];
    if (p.tapes[t] == TapeRole::OUTPUT) {
      if (n.written.count(pos) && n.cell(t, pos) != bit)
        throw Error("output cell " + pos.str() + " written twice with different values");
      n.written.insert(pos);
    }
    if (bit)
      n.ones[t].insert(pos);
    else
      n.ones[t].erase(pos);
    if (touched) touched->push_back({t, pos, bit});
  }
  for (std::size_t t = 0; t < p.tapes.size(); ++t) {
    Ordinal& h = n.heads[t];
    switch (tr.moves[t]) {
      case Move::RIGHT: h = succ(h); break;
      case Move::LEFT: h = h.is_successor() ? pred(h) : Ordinal(0); break;
      case Move::STAY: break;
    }
  }
  n.state = tr.to;
  n.stage = succ(c.stage);
  return n;
}

std::string snapshot_key(const Configuration& c) {
  std::string k = std::to_string(c.state);
  for (auto& h : c.heads) k += "|" + h.str();
  for (auto& s : c.ones) {
    k += "#";
    for (auto& pos : s) k += pos.str() + ",";
  }
  k += "@";
  for (auto& pos : c.written) k += pos.str() + ",";
  return k;
}

}  // namespace

Configuration step(const Configuration& c, const Program& p, const MachineIO& io) { return apply(c, p, io, nullptr); }

RunResult run_from(const Configuration& start, const Program& p, const MachineIO& io, std::size_t fuel) {
  Configuration c = start;
  for (std::size_t i = 0; i < fuel; ++i) {
    if (p.halting[c.state]) return {c, Outcome::HALTED};
    c = step(c, p, io);
  }
  return {c, p.halting[c.state] ? Outcome::HALTED : Outcome::FUEL_EXHAUSTED};
}

RunResult run(const Program& p, const MachineIO& io, std::size_t fuel) {
  return run_from(Configuration::initial(p), p, io, fuel);
}

Configuration limit_snapshot(const std::vector<Configuration>& period, const Ordinal& lambda) {
  if (period.empty()) throw NoCycleDetected("limit_snapshot: empty period");
  if (!lambda.is_limit()) throw Error("limit_snapshot: " + lambda.str() + " is not a limit");
  Configuration out = period.front();
  for (auto& c : period) {
    out.state = std::min(out.state, c.state);
    for (std::size_t t = 0; t < out.heads.size(); ++t) {
      out.heads[t] = std::min(out.heads[t], c.heads[t]);
      std::erase_if(out.ones[t], [&](const Ordinal& pos) { return !c.ones[t].count(pos); });
    }
    out.written.insert(c.written.begin(), c.written.end());
  }
  out.stage = lambda;
  return out;
}

Configuration advance_to_limit(const Configuration& start, const Program& p, const MachineIO& io,
                               std::size_t fuel) {
  std::vector<Configuration> history{start};
  std::unordered_map<std::string, std::size_t> seen{{snapshot_key(start), 0}};
  for (std::size_t i = 0; i < fuel; ++i) {
    const Configuration& c = history.back();
    if (p.halting[c.state]) throw NoCycleDetected("machine halts at stage " + c.stage.str() + " before a limit");
    Configuration n = step(c, p, io);
    auto [it, fresh] = seen.emplace(snapshot_key(n), history.size());
    if (!fresh) {
      std::vector<Configuration> period(history.begin() + static_cast<std::ptrdiff_t>(it->second), history.end());
      return limit_snapshot(period, ord_add(start.stage.limit_part(), Ordinal::omega()));
    }
    history.push_back(std::move(n));
  }
  throw NoCycleDetected("no exact configuration cycle within " + std::to_string(fuel) + " steps");
}

std::string t2_output(const Program& p, const MachineIO& io, std::size_t n, std::size_t fuel) {
  Configuration c = Configuration::initial(p);
  for (std::size_t i = 0;; ++i) {
    std::string prefix = c.output_prefix(n);
    if (prefix.size() == n) return prefix;
    if (p.halting[c.state]) throw FuelExhausted("halted after writing " + std::to_string(prefix.size()) + " output cells");
    if (i == fuel) throw FuelExhausted("fuel exhausted after writing " + std::to_string(prefix.size()) + " output cells");
    c = step(c, p, io);
  }
}

RunResult trace(const Program& p, const MachineIO& io, std::size_t fuel, std::ostream& out) {
  Configuration c = Configuration::initial(p);
  for (std::size_t i = 0; i < fuel; ++i) {
    if (p.halting[c.state]) return {c, Outcome::HALTED};
    std::vector<Touched> touched;
    c = apply(c, p, io, &touched);
    nlohmann::json j;
    j["stage"] = c.stage.str();
    j["state"] = p.states[c.state];
    j["heads"] = nlohmann::json::array();
    for (auto& h : c.heads) j["heads"].push_back(h.str());
    j["touched"] = nlohmann::json::array();
    for (auto& t : touched) j["touched"].push_back({{"tape", t.tape}, {"pos", t.pos.str()}, {"bit", t.bit ? 1 : 0}});
    out << j.dump() << '\n';
  }
  return {c, p.halting[c.state] ? Outcome::HALTED : Outcome::FUEL_EXHAUSTED};
}

Realizer program_realizer(const Program& p, std::size_t fuel) {
  if (!p.tape_with(TapeRole::INPUT)) throw ParseError("program_realizer: the program has no input tape");
  return {"program", 1, [p, fuel](const std::vector<Name>& in) {
            struct Cache {
              std::mutex mutex;
              std::string bits;
            };
            auto cache = std::make_shared<Cache>();
            MachineIO io{in[0], std::nullopt};
            return Name::program(
                [p, fuel, io, cache](const Ordinal& pos) {
                  auto v = pos.finite_value();
                  if (!v) throw BudgetExceeded("program output is simulated at finite positions only");
                  std::lock_guard lock(cache->mutex);
                  if (cache->bits.size() <= *v) cache->bits = t2_output(p, io, *v + 1, fuel);
                  return cache->bits[*v] == '1';
                },
                Ordinal::omega());
          }};
}

}  // namespace rk
