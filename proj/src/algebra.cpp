#include "ddal/algebra.hpp"

#include <bit>
#include <sstream>

namespace ddal {

AtomSet AtomSet::singleton(std::size_t width, std::size_t atom) {
  if (atom >= width) throw PreconditionError("atom index out of range");
  return AtomSet(width, std::uint64_t{1} << atom);
}

AtomSet AtomSet::from_bits(std::size_t width, std::uint64_t bits) {
  if (bits & ~mask(width)) throw PreconditionError("bits exceed atom set width");
  return AtomSet(width, bits);
}

std::size_t AtomSet::count() const { return std::popcount(bits_); }

std::vector<std::size_t> AtomSet::indices() const {
  std::vector<std::size_t> out;
  for (std::uint64_t b = bits_; b; b &= b - 1)
    out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
  return out;
}

void AtomSet::check_width(const AtomSet& o) const {
  if (width_ != o.width_)
    throw PreconditionError("atom sets of different width: " +
                            std::to_string(width_) + " vs " +
                            std::to_string(o.width_));
}

AtomSet AtomSet::operator|(const AtomSet& o) const {
  check_width(o);
  return AtomSet(width_, bits_ | o.bits_);
}

AtomSet AtomSet::operator&(const AtomSet& o) const {
  check_width(o);
  return AtomSet(width_, bits_ & o.bits_);
}

AtomSet AtomSet::operator^(const AtomSet& o) const {
  check_width(o);
  return AtomSet(width_, bits_ ^ o.bits_);
}

AtomSet AtomSet::minus(const AtomSet& o) const {
  check_width(o);
  return AtomSet(width_, bits_ & ~o.bits_);
}

bool AtomSet::subset_of(const AtomSet& o) const {
  check_width(o);
  return (bits_ & ~o.bits_) == 0;
}

std::size_t atom_count(const Vocabulary& vocab) {
  if (vocab.size() > kMaxActions)
    throw CapacityError("vocabulary has " + std::to_string(vocab.size()) +
                        " actions; the limit is " + std::to_string(kMaxActions));
  return std::size_t{1} << vocab.size();
}

std::vector<Atom> atoms(const Vocabulary& vocab) {
  const std::size_t n = atom_count(vocab);
  std::vector<Atom> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(Atom{i});
  return out;
}

namespace {

std::uint64_t basic_bits(std::size_t symbol, std::size_t width) {
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < width; ++i)
    if ((i >> symbol) & 1u) bits |= std::uint64_t{1} << i;
  return bits;
}

AtomSet denote_in(const Action& a, const Vocabulary& vocab, std::size_t width) {
  switch (a.kind()) {
    case ActionKind::kZero:
      return AtomSet::empty(width);
    case ActionKind::kOne:
      return AtomSet::full(width);
    case ActionKind::kBasic: {
      auto idx = vocab.index_of(a.symbol());
      if (!idx) throw PreconditionError("undeclared action " + a.symbol());
      return AtomSet::from_bits(width, basic_bits(*idx, width));
    }
    case ActionKind::kJoin:
      return denote_in(a.left(), vocab, width) | denote_in(a.right(), vocab, width);
    case ActionKind::kMeet:
      return denote_in(a.left(), vocab, width) & denote_in(a.right(), vocab, width);
    case ActionKind::kComplement:
      return denote_in(a.child(), vocab, width).complement();
  }
  return AtomSet::empty(width);
}

}  // namespace

AtomSet denote(const Action& a, const Vocabulary& vocab) {
  return denote_in(a, vocab, atom_count(vocab));
}

bool leq(const AtomSet& e1, const AtomSet& e2) { return e1.subset_of(e2); }

Action atom_term(std::size_t atom, const Vocabulary& vocab) {
  Action term = Action::zero();
  for (std::size_t k = 0; k < vocab.size(); ++k) {
    Action lit = Action::basic(vocab.symbol(k));
    if (!((atom >> k) & 1u)) lit = complement(lit);
    term = k == 0 ? lit : meet(term, lit);
  }
  return term;
}

Action canonical_term(const AtomSet& e, const Vocabulary& vocab) {
  if (e.is_empty()) return Action::zero();
  if (e == AtomSet::full(e.width())) return Action::one();
  const auto idx = e.indices();
  Action term = atom_term(idx.front(), vocab);
  for (std::size_t i = 1; i < idx.size(); ++i)
    term = join(term, atom_term(idx[i], vocab));
  return term;
}

std::vector<AtomSet> subsets_of(const AtomSet& e) {
  // Enumerate submasks of e.bits() in increasing numeric order.
  std::vector<AtomSet> out;
  const std::uint64_t m = e.bits();
  std::uint64_t s = 0;
  while (true) {
    out.push_back(AtomSet::from_bits(e.width(), s));
    if (s == m) break;
    s = (s - m) & m;
  }
  return out;
}

Ideal::Ideal(AtomSet generator, AtomSet universe)
    : generator_(generator), universe_(universe) {
  if (!generator_.subset_of(universe_))
    throw PreconditionError("ideal generator outside its universe");
}

Ideal generated_ideal(std::span<const AtomSet> base, const AtomSet& universe) {
  AtomSet gen = AtomSet::empty(universe.width());
  for (const AtomSet& e : base) {
    if (!e.subset_of(universe))
      throw PreconditionError("element outside the algebra");
    gen = gen | e;
  }
  return Ideal(gen, universe);
}

bool ideal_meet_trivial(const Ideal& i, const Ideal& j) {
  if (i.universe() != j.universe())
    throw PreconditionError("ideals over different algebras");
  return (i.generator() & j.generator()).is_empty();
}

std::string hasse_dot(const AtomSet& universe,
                      const std::function<std::string(const AtomSet&)>& label,
                      const std::function<std::string(const AtomSet&)>& attributes,
                      const std::string& graph_name) {
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out + "\"";
  };
  std::ostringstream os;
  os << "digraph " << quote(graph_name) << " {\n";
  os << "  rankdir=BT;\n";
  os << "  node [shape=box, fontname=\"monospace\"];\n";
  const auto elements = subsets_of(universe);
  for (const AtomSet& e : elements) {
    os << "  n" << e.bits() << " [label=" << quote(label(e));
    const std::string extra = attributes ? attributes(e) : std::string();
    if (!extra.empty()) os << ", " << extra;
    os << "];\n";
  }
  // Cover relation: e -> e + one more atom.
  for (const AtomSet& e : elements) {
    for (std::size_t a : universe.minus(e).indices())
      os << "  n" << e.bits() << " -> n"
         << (e | AtomSet::singleton(universe.width(), a)).bits()
         << " [arrowhead=none];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace ddal
