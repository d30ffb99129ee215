#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rk/ordinal.hpp"

namespace rk {

/// Budget applied to names constructed without an explicit one (initially w^2).
Ordinal default_name_budget();
void set_default_name_budget(const Ordinal& b);

enum class Shape { EXPLICIT, TUPLE, CONCAT, PROGRAM };
const char* shape_name(Shape s);

/// A lazily evaluated bit stream indexed by ordinals: the stand-in for an
/// element of 2^kappa. Bits at positions >= budget() are never materialized
/// (BudgetExceeded). Names are immutable and cheap to copy; memoized bits are
/// shared between copies and safe to query from several threads.
class Name {
 public:
  struct BitRun {
    bool bit;
    Ordinal length;
    friend bool operator==(const BitRun&, const BitRun&) = default;
  };
  using ComponentFn = std::function<Name(const Ordinal&)>;
  using WordFn = std::function<std::string(const Ordinal&)>;
  using BitFn = std::function<bool(const Ordinal&)>;

  /// Finitely many runs of bits, then the periodic word `filler` forever.
  static Name explicit_bits(std::vector<BitRun> runs, std::string filler,
                            std::optional<Ordinal> budget = std::nullopt);
  /// (p_a)_a: bit g(a, b) is bit b of component a.
  static Name tuple(ComponentFn components, std::optional<Ordinal> budget = std::nullopt,
                    std::string annotation = {});
  /// Tuple whose components are `listed` followed by `rest` everywhere else.
  static Name tuple_listed(std::vector<Name> listed, Name rest,
                           std::optional<Ordinal> budget = std::nullopt);
  /// Concatenation of 2-bit words; word a occupies positions 2a and 2a+1.
  static Name concat_fixed(WordFn words, std::optional<Ordinal> budget = std::nullopt,
                           std::string annotation = {});
  /// Finitely many 2-bit words followed by `tail_word` forever (an EXPLICIT name).
  static Name concat_fixed(const std::vector<std::string>& words, const std::string& tail_word,
                           std::optional<Ordinal> budget = std::nullopt);
  static Name program(BitFn bits, std::optional<Ordinal> budget = std::nullopt,
                      std::string annotation = {});
  /// The placeholder [10]^kappa.
  static Name placeholder(std::optional<Ordinal> budget = std::nullopt);
  static Name constant(bool bit, std::optional<Ordinal> budget = std::nullopt);

  bool bit_at(const Ordinal& pos) const;
  Shape shape() const;
  const Ordinal& budget() const;
  /// A short description of how the name was produced ("kind:argument");
  /// used for serialization of lazily defined names. May be empty.
  const std::string& annotation() const;
  Name with_budget(const Ordinal& budget) const;

  /// p_a for a tuple; for other shapes the view b -> bit g(a, b).
  Name component(const Ordinal& alpha) const;

  /// EXPLICIT structure (empty / "" for other shapes).
  const std::vector<BitRun>& runs() const;
  const std::string& filler() const;
  /// Listed components and the rest component of a tuple_listed name.
  const std::vector<Name>* listed_components() const;
  const Name* rest_component() const;

  /// Whether this is [10]^kappa. Exact for EXPLICIT names. Other shapes are
  /// probed at the first 64 positions and at w, w+1, w*2 and w*2+1 (those
  /// below the budget) and accepted when every probe matches.
  bool is_placeholder() const;

  /// First n bits as a '0'/'1' string.
  std::string prefix_bits(std::size_t n) const;

  std::string to_json() const;
  static Name from_json(const std::string& text);

  /// Rebuilds annotated names on deserialization: kind -> factory(argument, budget).
  using Factory = std::function<Name(const std::string&, const Ordinal&)>;
  static void register_factory(const std::string& kind, Factory f);

  struct Impl;

 private:
  explicit Name(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

}  // namespace rk
