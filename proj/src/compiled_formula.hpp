// Formulas with action denotations resolved to atom bit masks, evaluated
// against (alive, permitted, forbidden) masks. Internal to the library.
#pragma once

#include <cstdint>
#include <vector>

#include "ddal/algebra.hpp"
#include "ddal/syntax.hpp"

namespace ddal::detail {

struct CompiledFormula {
  FormulaKind kind;
  std::uint64_t lhs = 0;
  std::uint64_t rhs = 0;
  std::vector<CompiledFormula> sub = {};
};

inline CompiledFormula compile_formula(const Formula& f, const Vocabulary& vocab) {
  CompiledFormula c{f.kind()};
  switch (f.kind()) {
    case FormulaKind::kEq:
      c.lhs = denote(f.lhs(), vocab).bits();
      c.rhs = denote(f.rhs(), vocab).bits();
      break;
    case FormulaKind::kPerm:
    case FormulaKind::kForb:
      c.lhs = denote(f.action(), vocab).bits();
      break;
    case FormulaKind::kNot:
      c.sub.push_back(compile_formula(f.child(), vocab));
      break;
    case FormulaKind::kTop:
    case FormulaKind::kBottom:
      break;
    default:
      c.sub.push_back(compile_formula(f.left(), vocab));
      c.sub.push_back(compile_formula(f.right(), vocab));
  }
  return c;
}

inline bool evaluate(const CompiledFormula& c, std::uint64_t alive,
                     std::uint64_t perm, std::uint64_t forb) {
  switch (c.kind) {
    case FormulaKind::kTop: return true;
    case FormulaKind::kBottom: return false;
    case FormulaKind::kEq: return ((c.lhs ^ c.rhs) & alive) == 0;
    case FormulaKind::kPerm: return (c.lhs & alive & ~perm) == 0;
    case FormulaKind::kForb: return (c.lhs & alive & ~forb) == 0;
    case FormulaKind::kNot: return !evaluate(c.sub[0], alive, perm, forb);
    case FormulaKind::kOr:
      return evaluate(c.sub[0], alive, perm, forb) ||
             evaluate(c.sub[1], alive, perm, forb);
    case FormulaKind::kAnd:
      return evaluate(c.sub[0], alive, perm, forb) &&
             evaluate(c.sub[1], alive, perm, forb);
    case FormulaKind::kImplies:
      return !evaluate(c.sub[0], alive, perm, forb) ||
             evaluate(c.sub[1], alive, perm, forb);
    case FormulaKind::kIff:
      return evaluate(c.sub[0], alive, perm, forb) ==
             evaluate(c.sub[1], alive, perm, forb);
  }
  return false;
}

}  // namespace ddal::detail
