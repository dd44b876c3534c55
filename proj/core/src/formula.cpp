#include "nchatl/formula.hpp"

#include <cctype>
#include <sstream>

namespace nchatl {

bool Formula::operator==(const Formula& o) const {
  return kind == o.kind && prop == o.prop && coalition == o.coalition &&
         kids == o.kids;
}

Formula f_top() { return {}; }

Formula f_prop(std::string name) {
  Formula f;
  f.kind = FormulaKind::Prop;
  f.prop = std::move(name);
  return f;
}

namespace {

Formula unary_node(FormulaKind kind, Coalition c, Formula child) {
  Formula f;
  f.kind = kind;
  f.coalition = std::move(c);
  f.kids.push_back(std::move(child));
  return f;
}

Formula binary_node(FormulaKind kind, Coalition c, Formula a, Formula b) {
  Formula f;
  f.kind = kind;
  f.coalition = std::move(c);
  f.kids.push_back(std::move(a));
  f.kids.push_back(std::move(b));
  return f;
}

}  // namespace

Formula f_not(Formula f) { return unary_node(FormulaKind::Not, {}, std::move(f)); }
Formula f_or(Formula a, Formula b) {
  return binary_node(FormulaKind::Or, {}, std::move(a), std::move(b));
}
Formula f_and(Formula a, Formula b) {
  return binary_node(FormulaKind::And, {}, std::move(a), std::move(b));
}
Formula f_next(Coalition c, Formula f) {
  return unary_node(FormulaKind::Next, std::move(c), std::move(f));
}
Formula f_globally(Coalition c, Formula f) {
  return unary_node(FormulaKind::Globally, std::move(c), std::move(f));
}
Formula f_until(Coalition c, Formula a, Formula b) {
  return binary_node(FormulaKind::Until, std::move(c), std::move(a),
                     std::move(b));
}
Formula f_comply(Coalition c, Formula f) {
  return unary_node(FormulaKind::Comply, std::move(c), std::move(f));
}

ParseError::ParseError(const std::string& message, size_t pos)
    : std::runtime_error(message + " (at offset " + std::to_string(pos) + ")"),
      position(pos) {}

namespace {

enum class Tok {
  End,
  Ident,   // propositions and the keywords true/all/U/X/G
  Int,
  Bang,
  Bar,
  Amp,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Comma,
  Dash,
  LAngle2,   // <<
  RAngle2,   // >>
  LBrack,    // [
  RBrack,    // ]
  LBrack2,   // [[
  RBrack2,   // ]]
};

struct Token {
  Tok type = Tok::End;
  std::string text;
  long long value = 0;
  size_t pos = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[i_])))
      ++i_;
    tok_ = Token{};
    tok_.pos = i_;
    if (i_ >= text_.size()) return;
    char c = text_[i_];
    auto two = [&](char a, char b) {
      return c == a && i_ + 1 < text_.size() && text_[i_ + 1] == b;
    };
    if (two('<', '<')) { tok_.type = Tok::LAngle2; i_ += 2; return; }
    if (two('>', '>')) { tok_.type = Tok::RAngle2; i_ += 2; return; }
    if (two('[', '[')) { tok_.type = Tok::LBrack2; i_ += 2; return; }
    if (two(']', ']')) { tok_.type = Tok::RBrack2; i_ += 2; return; }
    switch (c) {
      case '!': tok_.type = Tok::Bang; ++i_; return;
      case '|': tok_.type = Tok::Bar; ++i_; return;
      case '&': tok_.type = Tok::Amp; ++i_; return;
      case '(': tok_.type = Tok::LParen; ++i_; return;
      case ')': tok_.type = Tok::RParen; ++i_; return;
      case '{': tok_.type = Tok::LBrace; ++i_; return;
      case '}': tok_.type = Tok::RBrace; ++i_; return;
      case ',': tok_.type = Tok::Comma; ++i_; return;
      case '-': tok_.type = Tok::Dash; ++i_; return;
      case '[': tok_.type = Tok::LBrack; ++i_; return;
      case ']': tok_.type = Tok::RBrack; ++i_; return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = i_;
      while (i_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[i_])))
        ++i_;
      tok_.type = Tok::Int;
      tok_.text = text_.substr(start, i_ - start);
      try {
        tok_.value = std::stoll(tok_.text);
      } catch (const std::exception&) {
        throw ParseError("integer out of range", start);
      }
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = i_;
      while (i_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[i_])) ||
              text_[i_] == '_'))
        ++i_;
      tok_.type = Tok::Ident;
      tok_.text = text_.substr(start, i_ - start);
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", i_);
  }

  const std::string& text_;
  size_t i_ = 0;
  Token tok_;
};

class Parser {
 public:
  Parser(const std::string& text, const Model& model)
      : lex_(text), model_(model) {}

  Formula run() {
    Formula f = parse_or();
    if (lex_.peek().type != Tok::End)
      throw ParseError("unexpected trailing input", lex_.peek().pos);
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg, lex_.peek().pos);
  }

  void expect(Tok t, const char* what) {
    if (lex_.peek().type != t) fail(std::string("expected ") + what);
    lex_.take();
  }

  bool is_keyword(const Token& t, const char* kw) const {
    return t.type == Tok::Ident && t.text == kw;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (lex_.peek().type == Tok::Bar) {
      lex_.take();
      f = f_or(std::move(f), parse_and());
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_until();
    while (lex_.peek().type == Tok::Amp) {
      lex_.take();
      f = f_and(std::move(f), parse_until());
    }
    return f;
  }

  // Handles the coalition-prefixed forms at this level so that
  // '<<C>> p U q' binds U below '&'; bare unaries pass through.
  Formula parse_until() {
    if (lex_.peek().type == Tok::LAngle2) {
      lex_.take();
      Coalition c = parse_coalition();
      expect(Tok::RAngle2, "'>>'");
      if (is_keyword(lex_.peek(), "X")) {
        lex_.take();
        return f_next(std::move(c), parse_unary());
      }
      if (is_keyword(lex_.peek(), "G")) {
        lex_.take();
        return f_globally(std::move(c), parse_unary());
      }
      Formula lhs = parse_unary();
      if (!is_keyword(lex_.peek(), "U"))
        fail("expected 'X', 'G', or 'φ U ψ' after '<<C>>'");
      lex_.take();
      return f_until(std::move(c), std::move(lhs), parse_until());
    }
    Formula f = parse_unary();
    if (is_keyword(lex_.peek(), "U"))
      fail("'U' needs a coalition prefix: <<C>> φ U ψ");
    return f;
  }

  Formula parse_unary() {
    const Token& t = lex_.peek();
    switch (t.type) {
      case Tok::Bang:
        lex_.take();
        return f_not(parse_unary());
      case Tok::LBrack: {
        lex_.take();
        Coalition c = parse_coalition();
        expect(Tok::RBrack, "']'");
        return f_comply(std::move(c), parse_unary());
      }
      case Tok::LBrack2: {
        lex_.take();
        Coalition c = parse_coalition();
        expect(Tok::RBrack2, "']]'");
        if (!is_keyword(lex_.peek(), "X"))
          fail("'[[C]]' supports only the X form: [[C]] X φ");
        lex_.take();
        return f_not(f_next(std::move(c), f_not(parse_unary())));
      }
      case Tok::LAngle2: {
        lex_.take();
        Coalition c = parse_coalition();
        expect(Tok::RAngle2, "'>>'");
        if (is_keyword(lex_.peek(), "X")) {
          lex_.take();
          return f_next(std::move(c), parse_unary());
        }
        if (is_keyword(lex_.peek(), "G")) {
          lex_.take();
          return f_globally(std::move(c), parse_unary());
        }
        fail("a '<<C>> φ U ψ' here needs parentheses: (<<C>> φ U ψ)");
      }
      case Tok::LParen: {
        lex_.take();
        Formula f = parse_or();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Ident: {
        if (t.text == "true") {
          lex_.take();
          return f_top();
        }
        if (t.text == "all" || t.text == "U" || t.text == "X" ||
            t.text == "G")
          fail("'" + t.text + "' is reserved and not a proposition");
        if (!model_.has_proposition(t.text))
          fail("unknown proposition '" + t.text + "'");
        return f_prop(lex_.take().text);
      }
      default:
        fail("expected a formula");
    }
  }

  Coalition parse_coalition() {
    const Token& t = lex_.peek();
    if (is_keyword(t, "all")) {
      lex_.take();
      return full_coalition(model_.agent_count);
    }
    if (t.type != Tok::LBrace) fail("expected a coalition: 'all' or '{...}'");
    lex_.take();
    std::vector<int> agents;
    if (lex_.peek().type != Tok::RBrace) {
      for (;;) {
        agents.push_back(parse_agent());
        if (lex_.peek().type == Tok::Dash) {
          lex_.take();
          int hi = parse_agent();
          int lo = agents.back();
          if (lo > hi) fail("empty agent range");
          for (int a = lo + 1; a <= hi; ++a) agents.push_back(a);
        }
        if (lex_.peek().type != Tok::Comma) break;
        lex_.take();
      }
    }
    expect(Tok::RBrace, "'}'");
    return make_coalition(std::move(agents));
  }

  int parse_agent() {
    if (lex_.peek().type != Tok::Int) fail("expected an agent index");
    Token t = lex_.take();
    if (t.value < 1 || t.value > model_.agent_count)
      throw ParseError("agent index " + t.text + " out of range 1.." +
                           std::to_string(model_.agent_count),
                       t.pos);
    return static_cast<int>(t.value);
  }

  Lexer lex_;
  const Model& model_;
};

int precedence(FormulaKind k) {
  switch (k) {
    case FormulaKind::Or: return 1;
    case FormulaKind::And: return 2;
    case FormulaKind::Until: return 3;
    case FormulaKind::Not:
    case FormulaKind::Next:
    case FormulaKind::Globally:
    case FormulaKind::Comply: return 4;
    case FormulaKind::Top:
    case FormulaKind::Prop: return 5;
  }
  return 5;
}

void print_coalition(std::ostringstream& os, const Coalition& c) {
  os << '{';
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) os << ',';
    os << c[i];
  }
  os << '}';
}

void print_rec(std::ostringstream& os, const Formula& f, int min_prec) {
  const int prec = precedence(f.kind);
  const bool parens = prec < min_prec;
  if (parens) os << '(';
  switch (f.kind) {
    case FormulaKind::Top:
      os << "true";
      break;
    case FormulaKind::Prop:
      os << f.prop;
      break;
    case FormulaKind::Not:
      os << '!';
      print_rec(os, f.kids[0], 4);
      break;
    case FormulaKind::Or:
      print_rec(os, f.kids[0], 1);
      os << " | ";
      print_rec(os, f.kids[1], 2);  // right operand parenthesized if Or
      break;
    case FormulaKind::And:
      print_rec(os, f.kids[0], 2);
      os << " & ";
      print_rec(os, f.kids[1], 3);
      break;
    case FormulaKind::Next:
      os << "<<";
      print_coalition(os, f.coalition);
      os << ">> X ";
      print_rec(os, f.kids[0], 4);
      break;
    case FormulaKind::Globally:
      os << "<<";
      print_coalition(os, f.coalition);
      os << ">> G ";
      print_rec(os, f.kids[0], 4);
      break;
    case FormulaKind::Until:
      os << "<<";
      print_coalition(os, f.coalition);
      os << ">> ";
      print_rec(os, f.kids[0], 4);
      os << " U ";
      print_rec(os, f.kids[1], 3);  // right-associative: Until stays bare
      break;
    case FormulaKind::Comply:
      os << '[';
      print_coalition(os, f.coalition);
      os << "] ";
      print_rec(os, f.kids[0], 4);
      break;
  }
  if (parens) os << ')';
}

void validate_rec(const Model& model, const Formula& f,
                  std::vector<std::string>& out) {
  switch (f.kind) {
    case FormulaKind::Prop:
      if (!model.has_proposition(f.prop))
        out.push_back("unknown proposition '" + f.prop + "'");
      break;
    case FormulaKind::Next:
    case FormulaKind::Globally:
    case FormulaKind::Until:
    case FormulaKind::Comply:
      for (int a : f.coalition)
        if (a < 1 || a > model.agent_count)
          out.push_back("agent index " + std::to_string(a) +
                        " out of range 1.." +
                        std::to_string(model.agent_count));
      break;
    default:
      break;
  }
  for (const Formula& kid : f.kids) validate_rec(model, kid, out);
}

}  // namespace

Formula parse_formula(const std::string& text, const Model& model) {
  return Parser(text, model).run();
}

std::string print_formula(const Formula& f) {
  std::ostringstream os;
  print_rec(os, f, 0);
  return os.str();
}

std::vector<std::string> validate_formula(const Model& model,
                                          const Formula& f) {
  std::vector<std::string> out;
  validate_rec(model, f, out);
  return out;
}

}  // namespace nchatl
