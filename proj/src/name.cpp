#include "rk/name.hpp"

#include <map>
#include <mutex>
#include <unordered_map>

#include <json.hpp>
#include "rk/errors.hpp"

namespace rk {

namespace {

std::mutex g_budget_mutex;
Ordinal g_default_budget = Ordinal::omega_power(Ordinal(2));

Ordinal resolve_budget(const std::optional<Ordinal>& b) {
  if (b) return *b;
  return default_name_budget();
}

std::mutex g_factory_mutex;
std::map<std::string, Name::Factory>& factories() {
  static std::map<std::string, Name::Factory> f;
  return f;
}

}  // namespace

Ordinal default_name_budget() {
  std::lock_guard lock(g_budget_mutex);
  return g_default_budget;
}

void set_default_name_budget(const Ordinal& b) {
  std::lock_guard lock(g_budget_mutex);
  g_default_budget = b;
}

const char* shape_name(Shape s) {
  switch (s) {
    case Shape::EXPLICIT: return "explicit";
    case Shape::TUPLE: return "tuple";
    case Shape::CONCAT: return "concat";
    case Shape::PROGRAM: return "program";
  }
  return "?";
}

struct Name::Impl {
  Shape shape;
  Ordinal budget;
  std::string annotation;

  std::vector<BitRun> runs;
  std::string filler;
  Ordinal prefix_length;

  ComponentFn component_fn;
  std::vector<Name> listed;
  std::optional<Name> rest;

  WordFn word_fn;
  BitFn bit_fn;

  mutable std::mutex memo_mutex;
  mutable std::unordered_map<Ordinal, Name, OrdinalHash> component_memo;
  mutable std::unordered_map<Ordinal, std::string, OrdinalHash> word_memo;
  mutable std::unordered_map<Ordinal, bool, OrdinalHash> bit_memo;
};

Name Name::explicit_bits(std::vector<BitRun> runs, std::string filler, std::optional<Ordinal> budget) {
  if (filler.empty()) throw std::invalid_argument("explicit name needs a nonempty filler word");
  for (char c : filler)
    if (c != '0' && c != '1') throw std::invalid_argument("filler must be a bit string");
  auto impl = std::make_shared<Impl>();
  impl->shape = Shape::EXPLICIT;
  impl->budget = resolve_budget(budget);
  for (auto& r : runs) {
    if (r.length.is_zero()) continue;
    if (!impl->runs.empty() && impl->runs.back().bit == r.bit)
      impl->runs.back().length = ord_add(impl->runs.back().length, r.length);
    else
      impl->runs.push_back(r);
    impl->prefix_length = ord_add(impl->prefix_length, r.length);
  }
  impl->filler = std::move(filler);
  return Name(std::move(impl));
}

Name Name::tuple(ComponentFn components, std::optional<Ordinal> budget, std::string annotation) {
  auto impl = std::make_shared<Impl>();
  impl->shape = Shape::TUPLE;
  impl->budget = resolve_budget(budget);
  impl->annotation = std::move(annotation);
  impl->component_fn = std::move(components);
  return Name(std::move(impl));
}

Name Name::tuple_listed(std::vector<Name> listed, Name rest, std::optional<Ordinal> budget) {
  auto impl = std::make_shared<Impl>();
  impl->shape = Shape::TUPLE;
  impl->budget = resolve_budget(budget);
  impl->listed = std::move(listed);
  impl->rest = std::move(rest);
  return Name(std::move(impl));
}

Name Name::concat_fixed(WordFn words, std::optional<Ordinal> budget, std::string annotation) {
  auto impl = std::make_shared<Impl>();
  impl->shape = Shape::CONCAT;
  impl->budget = resolve_budget(budget);
  impl->annotation = std::move(annotation);
  impl->word_fn = std::move(words);
  return Name(std::move(impl));
}

Name Name::concat_fixed(const std::vector<std::string>& words, const std::string& tail_word,
                        std::optional<Ordinal> budget) {
  std::vector<BitRun> runs;
  for (auto& w : words) {
    if (w.size() != 2) throw std::invalid_argument("concat_fixed words must have 2 bits");
    for (char c : w) runs.push_back({c == '1', Ordinal(1)});
  }
  if (tail_word.size() != 2) throw std::invalid_argument("concat_fixed words must have 2 bits");
  return explicit_bits(std::move(runs), tail_word, budget);
}

Name Name::program(BitFn bits, std::optional<Ordinal> budget, std::string annotation) {
  auto impl = std::make_shared<Impl>();
  impl->shape = Shape::PROGRAM;
  impl->budget = resolve_budget(budget);
  impl->annotation = std::move(annotation);
  impl->bit_fn = std::move(bits);
  return Name(std::move(impl));
}

Name Name::placeholder(std::optional<Ordinal> budget) { return explicit_bits({}, "10", budget); }

Name Name::constant(bool bit, std::optional<Ordinal> budget) {
  return explicit_bits({}, bit ? "1" : "0", budget);
}

Shape Name::shape() const { return impl_->shape; }
const Ordinal& Name::budget() const { return impl_->budget; }
const std::string& Name::annotation() const { return impl_->annotation; }
const std::vector<Name::BitRun>& Name::runs() const { return impl_->runs; }
const std::string& Name::filler() const { return impl_->filler; }

const std::vector<Name>* Name::listed_components() const {
  return impl_->rest ? &impl_->listed : nullptr;
}

const Name* Name::rest_component() const { return impl_->rest ? &*impl_->rest : nullptr; }

Name Name::with_budget(const Ordinal& budget) const {
  auto impl = std::make_shared<Impl>();
  impl->shape = impl_->shape;
  impl->budget = budget;
  impl->annotation = impl_->annotation;
  impl->runs = impl_->runs;
  impl->filler = impl_->filler;
  impl->prefix_length = impl_->prefix_length;
  impl->component_fn = impl_->component_fn;
  impl->listed = impl_->listed;
  impl->rest = impl_->rest;
  impl->word_fn = impl_->word_fn;
  impl->bit_fn = impl_->bit_fn;
  return Name(std::move(impl));
}

bool Name::bit_at(const Ordinal& pos) const {
  const Impl& m = *impl_;
  if (!(pos < m.budget))
    throw BudgetExceeded("bit " + pos.str() + " is beyond the name budget " + m.budget.str());
  switch (m.shape) {
    case Shape::EXPLICIT: {
      if (pos < m.prefix_length) {
        Ordinal start;
        for (auto& r : m.runs) {
          Ordinal end = ord_add(start, r.length);
          if (pos < end) return r.bit;
          start = std::move(end);
        }
      }
      // Limit ordinals are multiples of any natural, so only the finite part
      // of the offset matters for the periodic filler.
      Ordinal offset = ord_sub(m.prefix_length, pos);
      return m.filler[offset.finite_part() % m.filler.size()] == '1';
    }
    case Shape::TUPLE: {
      auto [a, b] = godel_unpair(pos);
      return component(a).bit_at(b);
    }
    case Shape::CONCAT: {
      FiniteDivision d = div_finite(pos, 2);
      std::string word;
      {
        std::lock_guard lock(m.memo_mutex);
        if (auto it = m.word_memo.find(d.quotient); it != m.word_memo.end()) word = it->second;
      }
      if (word.empty()) {
        word = m.word_fn(d.quotient);
        if (word.size() != 2) throw InvalidName("concat word of length " + std::to_string(word.size()));
        std::lock_guard lock(m.memo_mutex);
        word = m.word_memo.emplace(d.quotient, word).first->second;
      }
      return word[d.remainder] == '1';
    }
    case Shape::PROGRAM: {
      {
        std::lock_guard lock(m.memo_mutex);
        if (auto it = m.bit_memo.find(pos); it != m.bit_memo.end()) return it->second;
      }
      bool b = m.bit_fn(pos);
      std::lock_guard lock(m.memo_mutex);
      return m.bit_memo.emplace(pos, b).first->second;
    }
  }
  return false;
}

Name Name::component(const Ordinal& alpha) const {
  const Impl& m = *impl_;
  if (m.shape == Shape::TUPLE) {
    if (m.rest) {
      auto n = alpha.finite_value();
      if (n && *n < m.listed.size()) return m.listed[*n];
      return *m.rest;
    }
    {
      std::lock_guard lock(m.memo_mutex);
      if (auto it = m.component_memo.find(alpha); it != m.component_memo.end()) return it->second;
    }
    Name c = m.component_fn(alpha);
    std::lock_guard lock(m.memo_mutex);
    return m.component_memo.emplace(alpha, std::move(c)).first->second;
  }
  Name self = *this;
  return program([self, alpha](const Ordinal& b) { return self.bit_at(godel_pair(alpha, b)); },
                 m.budget);
}

bool Name::is_placeholder() const {
  const Impl& m = *impl_;
  if (m.shape == Shape::EXPLICIT) {
    bool alternating = m.filler.size() % 2 == 0;
    for (std::size_t i = 0; alternating && i < m.filler.size(); ++i)
      alternating = m.filler[i] == (i % 2 == 0 ? '1' : '0');
    if (!alternating) return false;
    if (!m.prefix_length.is_finite() || m.prefix_length.finite_part() % 2 != 0) return false;
    std::uint64_t pos = 0;
    for (auto& r : m.runs) {
      if (r.length != Ordinal(1) || r.bit != (pos % 2 == 0)) return false;
      ++pos;
    }
    return true;
  }
  // Lazy names are compared on the first 64 positions and the landmarks
  // w, w+1, w*2, w*2+1.
  std::vector<Ordinal> probe;
  for (std::uint64_t i = 0; i < 64; ++i) probe.emplace_back(i);
  for (std::uint64_t k : {1, 2})
    for (std::uint64_t j : {0, 1}) probe.push_back(ord_add(ord_mul(Ordinal::omega(), Ordinal(k)), Ordinal(j)));
  for (auto& pos : probe) {
    if (!(pos < m.budget)) continue;
    try {
      if (bit_at(pos) != (pos.finite_part() % 2 == 0)) return false;
    } catch (const BudgetExceeded&) {
      // A view whose positions map past its parent's budget.
    }
  }
  return true;
}

std::string Name::prefix_bits(std::size_t n) const {
  std::string out;
  for (std::size_t i = 0; i < n; ++i) out += bit_at(Ordinal(i)) ? '1' : '0';
  return out;
}

namespace {

using nlohmann::json;

json to_json_value(const Name& p) {
  json j;
  j["shape"] = shape_name(p.shape());
  j["budget"] = p.budget().str();
  json payload = json::object();
  if (p.shape() == Shape::EXPLICIT) {
    payload["runs"] = json::array();
    for (auto& r : p.runs()) payload["runs"].push_back({{"bit", r.bit ? 1 : 0}, {"length", r.length.str()}});
    payload["filler"] = p.filler();
  } else if (p.listed_components()) {
    payload["components"] = json::array();
    for (auto& c : *p.listed_components()) payload["components"].push_back(to_json_value(c));
    payload["rest"] = to_json_value(*p.rest_component());
  } else if (!p.annotation().empty()) {
    payload["annotation"] = p.annotation();
  } else {
    throw InvalidName(std::string("lazily defined ") + shape_name(p.shape()) +
                      " name without annotation cannot be serialized");
  }
  j["payload"] = payload;
  return j;
}

Name from_json_value(const json& j) {
  try {
    const std::string shape = j.at("shape").get<std::string>();
    const Ordinal budget = Ordinal::parse(j.at("budget").get<std::string>());
    const json& payload = j.at("payload");
    if (payload.contains("annotation")) {
      const std::string a = payload.at("annotation").get<std::string>();
      const auto colon = a.find(':');
      const std::string kind = a.substr(0, colon);
      const std::string arg = colon == std::string::npos ? "" : a.substr(colon + 1);
      Name::Factory f;
      {
        std::lock_guard lock(g_factory_mutex);
        auto it = factories().find(kind);
        if (it == factories().end()) throw InvalidName("unknown name annotation '" + kind + "'");
        f = it->second;
      }
      return f(arg, budget);
    }
    if (shape == "explicit") {
      std::vector<Name::BitRun> runs;
      for (auto& r : payload.at("runs"))
        runs.push_back({r.at("bit").get<int>() != 0, Ordinal::parse(r.at("length").get<std::string>())});
      return Name::explicit_bits(std::move(runs), payload.at("filler").get<std::string>(), budget);
    }
    if (shape == "tuple") {
      std::vector<Name> listed;
      for (auto& c : payload.at("components")) listed.push_back(from_json_value(c));
      return Name::tuple_listed(std::move(listed), from_json_value(payload.at("rest")), budget);
    }
    throw InvalidName("cannot deserialize a " + shape + " name without annotation");
  } catch (const json::exception& e) {
    throw ParseError(std::string("name JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("name JSON: ") + e.what());
  }
}

}  // namespace

std::string Name::to_json() const { return to_json_value(*this).dump(); }

Name Name::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("name JSON: ") + e.what());
  }
  return from_json_value(j);
}

void Name::register_factory(const std::string& kind, Factory f) {
  std::lock_guard lock(g_factory_mutex);
  factories()[kind] = std::move(f);
}

}  // namespace rk
