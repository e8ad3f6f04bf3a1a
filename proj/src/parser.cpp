// Recursive-descent parser for the line-oriented theory format.
#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "ddal/syntax.hpp"

namespace ddal {
namespace {

enum class Tok {
  kIdent,
  kZero,
  kOne,
  kPlus,
  kStar,
  kBang,
  kLParen,
  kRParen,
  kEq,
  kEquiv,
  kNequiv,
  kTilde,
  kAnd,
  kOr,
  kArrow,
  kIff,
  kLeadsTo,
  kYields,
  kColon,
  kPerm,
  kForb,
  kTrue,
  kFalse,
  kEnd
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::kIdent: return "identifier";
    case Tok::kZero: return "'0'";
    case Tok::kOne: return "'1'";
    case Tok::kPlus: return "'+'";
    case Tok::kStar: return "'*'";
    case Tok::kBang: return "'!'";
    case Tok::kLParen: return "'('";
    case Tok::kRParen: return "')'";
    case Tok::kEq: return "'='";
    case Tok::kEquiv: return "'=='";
    case Tok::kNequiv: return "'=/='";
    case Tok::kTilde: return "'~'";
    case Tok::kAnd: return "'/\\'";
    case Tok::kOr: return "'\\/'";
    case Tok::kArrow: return "'->'";
    case Tok::kIff: return "'<->'";
    case Tok::kLeadsTo: return "'~>'";
    case Tok::kYields: return "'=>'";
    case Tok::kColon: return "':'";
    case Tok::kPerm: return "'P'";
    case Tok::kForb: return "'F'";
    case Tok::kTrue: return "'true'";
    case Tok::kFalse: return "'false'";
    case Tok::kEnd: return "end of line";
  }
  return "?";
}

// `offset` is the 0-based column of text[0] in the source line.
std::vector<Token> tokenize(std::string_view text, std::size_t line,
                            std::size_t offset) {
  static const std::pair<const char*, Tok> kPunct[] = {
      {"<->", Tok::kIff}, {"=/=", Tok::kNequiv}, {"==", Tok::kEquiv},
      {"=>", Tok::kYields}, {"~>", Tok::kLeadsTo}, {"->", Tok::kArrow},
      {"/\\", Tok::kAnd},  {"\\/", Tok::kOr},      {"=", Tok::kEq},
      {"~", Tok::kTilde},  {"+", Tok::kPlus},      {"*", Tok::kStar},
      {"!", Tok::kBang},   {"(", Tok::kLParen},    {")", Tok::kRParen},
      {":", Tok::kColon},  {"0", Tok::kZero},      {"1", Tok::kOne},
  };
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t col = offset + i + 1;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      std::string word(text.substr(i, j - i));
      Tok kind = Tok::kIdent;
      if (word == "P") kind = Tok::kPerm;
      else if (word == "F") kind = Tok::kForb;
      else if (word == "true") kind = Tok::kTrue;
      else if (word == "false") kind = Tok::kFalse;
      out.push_back({kind, std::move(word), col});
      i = j;
      continue;
    }
    bool matched = false;
    for (const auto& [spelling, kind] : kPunct) {
      std::string_view s(spelling);
      if (text.substr(i, s.size()) == s) {
        out.push_back({kind, std::string(s), col});
        i += s.size();
        matched = true;
        break;
      }
    }
    if (!matched)
      throw ParseError(std::string("unexpected character '") + c + "'", line,
                       col);
  }
  out.push_back({Tok::kEnd, "", offset + text.size() + 1});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, const Vocabulary& vocab, std::size_t line)
      : tokens_(std::move(tokens)), vocab_(vocab), line_(line) {}

  Formula formula() { return iff(); }

  Action action() {
    Action a = join_level();
    while (peek() == Tok::kEquiv || peek() == Tok::kNequiv) {
      const bool equiv = next().kind == Tok::kEquiv;
      Action b = join_level();
      a = equiv ? desugar_equiv(a, b) : desugar_nequiv(a, b);
    }
    return a;
  }

  NormalDefault default_rule() {
    if ((peek() == Tok::kPerm || peek() == Tok::kForb) &&
        peek(1) == Tok::kColon) {
      const Modality m =
          next().kind == Tok::kPerm ? Modality::kPerm : Modality::kForb;
      next();
      Action from = action();
      expect(Tok::kLeadsTo);
      Action to = action();
      return BasicDeonticDefault{m, from, to}.as_normal();
    }
    Formula pre = formula();
    expect(Tok::kYields);
    Formula con = formula();
    return {pre, con};
  }

  void expect_end() { expect(Tok::kEnd); }

 private:
  Tok peek(std::size_t ahead = 0) const {
    const std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i].kind;
  }
  const Token& next() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = tokens_[pos_];
    std::string found = t.kind == Tok::kEnd ? "end of line" : "'" + t.text + "'";
    throw ParseError(what + ", found " + found, line_, t.column);
  }
  void expect(Tok kind) {
    if (peek() != kind) fail(std::string("expected ") + describe(kind));
    next();
  }

  Formula iff() {
    Formula f = implies();
    while (peek() == Tok::kIff) {
      next();
      f = biconditional(f, implies());
    }
    return f;
  }

  Formula implies() {
    Formula f = disj();
    if (peek() == Tok::kArrow) {
      next();
      return implication(f, implies());
    }
    return f;
  }

  Formula disj() {
    Formula f = conj();
    while (peek() == Tok::kOr) {
      next();
      f = disjunction(f, conj());
    }
    return f;
  }

  Formula conj() {
    Formula f = unary();
    while (peek() == Tok::kAnd) {
      next();
      f = conjunction(f, unary());
    }
    return f;
  }

  Formula unary() {
    if (peek() == Tok::kTilde) {
      next();
      return negation(unary());
    }
    return primary();
  }

  Formula primary() {
    switch (peek()) {
      case Tok::kTrue:
        next();
        return Formula::top();
      case Tok::kFalse:
        next();
        return Formula::bottom();
      case Tok::kPerm:
      case Tok::kForb: {
        const bool perm = next().kind == Tok::kPerm;
        expect(Tok::kLParen);
        Action a = action();
        expect(Tok::kRParen);
        return perm ? Formula::perm(a) : Formula::forb(a);
      }
      case Tok::kLParen: {
        // Either a parenthesised action on the left of '=' or a
        // parenthesised formula. Try the equation first.
        const std::size_t start = pos_;
        std::optional<ParseError> as_equation;
        try {
          return equation();
        } catch (const ParseError& e) {
          as_equation = e;
        }
        const std::size_t equation_reach = pos_;
        pos_ = start;
        try {
          next();
          Formula f = formula();
          expect(Tok::kRParen);
          return f;
        } catch (const ParseError&) {
          if (equation_reach > pos_) throw *as_equation;
          throw;
        }
      }
      default:
        return equation();
    }
  }

  Formula equation() {
    Action a = action();
    expect(Tok::kEq);
    Action b = action();
    return Formula::eq(a, b);
  }

  Action join_level() {
    Action a = meet_level();
    while (peek() == Tok::kPlus) {
      next();
      a = join(a, meet_level());
    }
    return a;
  }

  Action meet_level() {
    Action a = unary_action();
    while (peek() == Tok::kStar) {
      next();
      a = meet(a, unary_action());
    }
    return a;
  }

  Action unary_action() {
    if (peek() == Tok::kBang) {
      next();
      return complement(unary_action());
    }
    switch (peek()) {
      case Tok::kZero:
        next();
        return Action::zero();
      case Tok::kOne:
        next();
        return Action::one();
      case Tok::kIdent: {
        const Token& t = tokens_[pos_];
        if (!vocab_.index_of(t.text))
          throw ParseError("undeclared action '" + t.text + "'", line_,
                           t.column);
        next();
        return Action::basic(t.text);
      }
      case Tok::kLParen: {
        next();
        Action a = action();
        expect(Tok::kRParen);
        return a;
      }
      default:
        fail("expected action");
    }
  }

  std::vector<Token> tokens_;
  const Vocabulary& vocab_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text, const Vocabulary& vocab) {
  Parser p(tokenize(text, 1, 0), vocab, 1);
  Formula f = p.formula();
  p.expect_end();
  return f;
}

Action parse_action(std::string_view text, const Vocabulary& vocab) {
  Parser p(tokenize(text, 1, 0), vocab, 1);
  Action a = p.action();
  p.expect_end();
  return a;
}

NormalDefault parse_default(std::string_view text, const Vocabulary& vocab) {
  Parser p(tokenize(text, 1, 0), vocab, 1);
  NormalDefault d = p.default_rule();
  p.expect_end();
  return d;
}

Theory parse_theory(std::string_view text) {
  Theory theory;
  bool have_vocab = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    pos = eol + 1;

    std::size_t i = 0;
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    if (i == line.size() || line[i] == '#') continue;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])))
      ++j;
    const std::string_view keyword = line.substr(i, j - i);
    const std::string_view rest = line.substr(j);

    if (keyword == "actions") {
      if (have_vocab)
        throw ParseError("duplicate actions declaration", line_no, i + 1);
      std::vector<std::string> names;
      for (const Token& t : tokenize(rest, line_no, j)) {
        if (t.kind == Tok::kEnd) break;
        if (t.kind != Tok::kIdent)
          throw ParseError("reserved word or invalid action name '" + t.text + "'",
                           line_no, t.column);
        names.push_back(t.text);
      }
      if (names.empty())
        throw ParseError("actions declaration needs at least one action",
                         line_no, j + 1);
      try {
        theory.vocabulary = Vocabulary(std::move(names));
      } catch (const PreconditionError& e) {
        throw ParseError(e.what(), line_no, j + 1);
      }
      have_vocab = true;
      continue;
    }
    if (keyword != "fact" && keyword != "default")
      throw ParseError("expected 'actions', 'fact' or 'default'", line_no,
                       i + 1);
    if (!have_vocab)
      throw ParseError("missing vocabulary declaration (actions line)", line_no,
                       i + 1);
    Parser p(tokenize(rest, line_no, j), theory.vocabulary, line_no);
    if (keyword == "fact") {
      theory.facts.push_back(p.formula());
    } else {
      theory.defaults.push_back(p.default_rule());
    }
    p.expect_end();
  }
  if (!have_vocab)
    throw ParseError("missing vocabulary declaration (actions line)", line_no,
                     1);
  return theory;
}

}  // namespace ddal
