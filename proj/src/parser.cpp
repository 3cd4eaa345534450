#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "excm/document.hpp"
#include "excm/errors.hpp"

namespace excm {

namespace {

enum class Tok {
  end, ident, number,
  lbrace, rbrace, lparen, rparen, lbracket, rbracket,
  colon, comma, pipe, dotdot, assign, eqeq, geq, gt, plus, minus, star,
};

struct Token {
  Tok kind = Tok::end;
  std::string text;
  Value num = 0;
  int line = 1, col = 1;
};

const char* describe(Tok k) {
  switch (k) {
    case Tok::end: return "end of file";
    case Tok::ident: return "a name";
    case Tok::number: return "a number";
    case Tok::lbrace: return "'{'";
    case Tok::rbrace: return "'}'";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::lbracket: return "'['";
    case Tok::rbracket: return "']'";
    case Tok::colon: return "':'";
    case Tok::comma: return "','";
    case Tok::pipe: return "'|'";
    case Tok::dotdot: return "'..'";
    case Tok::assign: return "'='";
    case Tok::eqeq: return "'=='";
    case Tok::geq: return "'>='";
    case Tok::gt: return "'>'";
    case Tok::plus: return "'+'";
    case Tok::minus: return "'-'";
    case Tok::star: return "'*'";
  }
  return "?";
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto bump = [&](std::size_t n) {
    for (; n > 0; --n, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') bump(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      bump(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) ||
              text[j] == '_'))
        ++j;
      t.kind = Tok::ident;
      t.text = text.substr(i, j - i);
      bump(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[j])))
        ++j;
      t.kind = Tok::number;
      try {
        t.num = std::stol(text.substr(i, j - i));
      } catch (const std::out_of_range&) {
        throw ParseError(line, col, "number is too large");
      }
      bump(j - i);
    } else {
      std::string_view two(text.data() + i, std::min<std::size_t>(2, text.size() - i));
      if (two == "..") {
        t.kind = Tok::dotdot;
        bump(2);
      } else if (two == "==") {
        t.kind = Tok::eqeq;
        bump(2);
      } else if (two == ">=") {
        t.kind = Tok::geq;
        bump(2);
      } else {
        switch (c) {
          case '{': t.kind = Tok::lbrace; break;
          case '}': t.kind = Tok::rbrace; break;
          case '(': t.kind = Tok::lparen; break;
          case ')': t.kind = Tok::rparen; break;
          case '[': t.kind = Tok::lbracket; break;
          case ']': t.kind = Tok::rbracket; break;
          case ':': t.kind = Tok::colon; break;
          case ',': t.kind = Tok::comma; break;
          case '|': t.kind = Tok::pipe; break;
          case '=': t.kind = Tok::assign; break;
          case '>': t.kind = Tok::gt; break;
          case '+': t.kind = Tok::plus; break;
          case '-': t.kind = Tok::minus; break;
          case '*': t.kind = Tok::star; break;
          default:
            throw ParseError(line, col,
                             std::string("unexpected character '") + c + "'");
        }
        bump(1);
      }
    }
    out.push_back(std::move(t));
  }
  Token eof;
  eof.line = line;
  eof.col = col;
  out.push_back(std::move(eof));
  return out;
}

// Words with grammatical meaning inside expressions and cells; variables may
// not shadow them.
const std::set<std::string>& reserved_words() {
  static const std::set<std::string> words{"if",  "then",  "else", "min",
                                           "max", "table", "Pl"};
  return words;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  ModelDocument run() {
    parse_variable_section("variables", endo_);
    if (at_section("exogenous")) parse_variable_section("exogenous", exo_);
    sig_ = Signature(exo_, endo_);

    Token section_tok = peek();
    std::map<std::string, ExprPtr> eqs;
    if (at_section("equations")) eqs = parse_equations();
    try {
      doc_.spec.model = CausalModel::make(sig_, std::move(eqs));
    } catch (const Error& e) {
      throw ParseError(section_tok.line, section_tok.col, e.what());
    }

    if (at_section("plaus")) parse_plaus();
    while (at_section("override")) parse_override();
    while (at_section("context")) parse_context();
    if (peek().kind != Tok::end)
      fail(peek(), "unexpected content after the last section");
    return std::move(doc_);
  }

 private:
  [[noreturn]] void fail(const Token& t, const std::string& msg) {
    throw ParseError(t.line, t.col, msg);
  }

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t k = pos_ + ahead;
    return k < toks_.size() ? toks_[k] : toks_.back();
  }
  Token next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  Token expect(Tok kind) {
    Token t = next();
    if (t.kind != kind)
      fail(t, std::string("expected ") + describe(kind) + ", found " +
                  describe(t.kind));
    return t;
  }

  Token expect_keyword(const char* word) {
    Token t = next();
    if (t.kind != Tok::ident || t.text != word)
      fail(t, std::string("expected '") + word + "', found " +
                  (t.kind == Tok::ident ? "'" + t.text + "'"
                                        : describe(t.kind)));
    return t;
  }

  bool at_section(const char* word) const {
    return peek().kind == Tok::ident && peek().text == word;
  }

  Value parse_signed() {
    bool neg = peek().kind == Tok::minus;
    if (neg) next();
    Token n = expect(Tok::number);
    return neg ? -n.num : n.num;
  }

  // ---- declarations ------------------------------------------------------

  std::vector<Value> parse_range(const Token& name_tok) {
    if (peek().kind == Tok::lbracket) {
      next();
      std::vector<Value> vals{parse_signed()};
      while (peek().kind == Tok::comma) {
        next();
        Token at = peek();
        Value v = parse_signed();
        for (Value seen : vals)
          if (seen == v)
            fail(at, "range of '" + name_tok.text + "' repeats value " +
                         std::to_string(v));
        vals.push_back(v);
      }
      expect(Tok::rbracket);
      return vals;
    }
    Token lo_tok = peek();
    Value lo = parse_signed();
    expect(Tok::dotdot);
    Value hi = parse_signed();
    if (hi < lo)
      fail(lo_tok, "range of '" + name_tok.text + "' is empty");
    if (hi - lo >= static_cast<Value>(default_world_cap))
      fail(lo_tok, "range of '" + name_tok.text + "' is too large");
    std::vector<Value> vals;
    for (Value v = lo; v <= hi; ++v) vals.push_back(v);
    return vals;
  }

  void parse_variable_section(const char* header, std::vector<Variable>& out) {
    expect_keyword(header);
    expect(Tok::lbrace);
    while (peek().kind != Tok::rbrace) {
      Token name = expect(Tok::ident);
      if (reserved_words().count(name.text))
        fail(name, "'" + name.text + "' is a reserved word");
      if (declared_.count(name.text))
        fail(name, "variable '" + name.text + "' declared twice");
      expect(Tok::colon);
      out.push_back({name.text, parse_range(name)});
      declared_.insert(name.text);
    }
    expect(Tok::rbrace);
  }

  // ---- expressions -------------------------------------------------------

  ExprPtr parse_expr() {
    if (at_section("if")) {
      next();
      ExprPtr c = parse_cmp();
      expect_keyword("then");
      ExprPtr a = parse_cmp();
      expect_keyword("else");
      return expr::ite(std::move(c), std::move(a), parse_expr());
    }
    return parse_cmp();
  }

  ExprPtr parse_cmp() {
    ExprPtr lhs = parse_add();
    Tok k = peek().kind;
    if (k != Tok::eqeq && k != Tok::geq) return lhs;
    next();
    ExprPtr rhs = parse_add();
    if (peek().kind == Tok::eqeq || peek().kind == Tok::geq)
      fail(peek(), "comparisons do not chain; add parentheses");
    return k == Tok::eqeq ? expr::eq(std::move(lhs), std::move(rhs))
                          : expr::geq(std::move(lhs), std::move(rhs));
  }

  ExprPtr parse_add() {
    ExprPtr e = parse_mul();
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      bool add = next().kind == Tok::plus;
      e = add ? expr::add(std::move(e), parse_mul())
              : expr::sub(std::move(e), parse_mul());
    }
    return e;
  }

  ExprPtr parse_mul() {
    ExprPtr e = parse_primary();
    while (peek().kind == Tok::star) {
      next();
      e = expr::mul(std::move(e), parse_primary());
    }
    return e;
  }

  ExprPtr parse_primary() {
    Token t = peek();
    if (t.kind == Tok::lparen) {
      next();
      ExprPtr e = parse_expr();
      expect(Tok::rparen);
      return e;
    }
    if (t.kind == Tok::minus || t.kind == Tok::number)
      return expr::constant(parse_signed());
    if (t.kind == Tok::ident) {
      if (t.text == "min" || t.text == "max") {
        next();
        expect(Tok::lparen);
        ExprPtr a = parse_expr();
        expect(Tok::comma);
        ExprPtr b = parse_expr();
        expect(Tok::rparen);
        return t.text == "min" ? expr::min(std::move(a), std::move(b))
                               : expr::max(std::move(a), std::move(b));
      }
      if (t.text == "table") {
        next();
        return parse_table(t);
      }
      if (t.text == "if") return parse_expr();
      next();
      if (!sig_.has(t.text)) fail(t, "undeclared variable '" + t.text + "'");
      return expr::var(t.text);
    }
    fail(t, std::string("expected an expression, found ") + describe(t.kind));
  }

  ExprPtr parse_table(const Token& kw) {
    expect(Tok::lparen);
    std::vector<std::string> args;
    std::vector<std::vector<Value>> ranges;
    while (true) {
      Token a = expect(Tok::ident);
      if (!sig_.has(a.text)) fail(a, "undeclared variable '" + a.text + "'");
      for (const auto& seen : args)
        if (seen == a.text)
          fail(a, "table repeats argument '" + a.text + "'");
      args.push_back(a.text);
      ranges.push_back(sig_.range_of(a.text));
      if (peek().kind != Tok::comma) break;
      next();
    }
    expect(Tok::rparen);
    RadixSpace space(ranges);
    if (space.overflowed() || space.size() > default_world_cap)
      fail(kw, "table argument space is too large");
    std::vector<std::optional<Value>> out(space.size());
    std::size_t filled = 0;
    expect(Tok::lbrace);
    auto entry = [&] {
      Token open = expect(Tok::lparen);
      std::vector<Value> key;
      if (peek().kind != Tok::rparen) {
        key.push_back(parse_signed());
        while (peek().kind == Tok::comma) {
          next();
          key.push_back(parse_signed());
        }
      }
      expect(Tok::rparen);
      if (key.size() != args.size())
        fail(open, "table entry lists " + std::to_string(key.size()) +
                       " values for " + std::to_string(args.size()) +
                       " arguments");
      std::size_t index = 0;
      for (std::size_t k = 0; k < key.size(); ++k) {
        int p = range_index(ranges[k], key[k]);
        if (p < 0)
          fail(open, "table key value " + std::to_string(key[k]) +
                         " is not in the range of '" + args[k] + "'");
        index = index * ranges[k].size() + static_cast<std::size_t>(p);
      }
      expect(Tok::colon);
      if (out[index].has_value()) fail(open, "duplicate table entry");
      out[index] = parse_signed();
      ++filled;
    };
    if (peek().kind != Tok::rbrace) {
      entry();
      while (peek().kind == Tok::comma) {
        next();
        entry();
      }
    }
    Token close = expect(Tok::rbrace);
    if (filled != out.size())
      fail(close, "table covers " + std::to_string(filled) + " of " +
                      std::to_string(out.size()) + " argument settings");
    std::vector<Value> outputs;
    outputs.reserve(out.size());
    for (const auto& v : out) outputs.push_back(*v);
    return expr::table(std::move(args), std::move(ranges),
                       std::move(outputs));
  }

  std::map<std::string, ExprPtr> parse_equations() {
    expect_keyword("equations");
    expect(Tok::lbrace);
    std::map<std::string, ExprPtr> eqs;
    while (peek().kind != Tok::rbrace) {
      Token target = expect(Tok::ident);
      if (sig_.exo_index(target.text) >= 0)
        fail(target, "'" + target.text +
                         "' is exogenous and cannot carry an equation");
      if (sig_.endo_index(target.text) < 0)
        fail(target, "undeclared variable '" + target.text + "'");
      if (eqs.count(target.text))
        fail(target, "second equation for '" + target.text + "'");
      expect(Tok::assign);
      eqs[target.text] = parse_expr();
    }
    expect(Tok::rbrace);
    return eqs;
  }

  // ---- plausibility declarations ----------------------------------------

  PlausCell parse_cell() {
    expect_keyword("Pl");
    expect(Tok::lparen);
    Token var = expect(Tok::ident);
    if (sig_.endo_index(var.text) < 0)
      fail(var, sig_.exo_index(var.text) >= 0
                    ? "'" + var.text +
                          "' is exogenous; plausibility tables cover "
                          "endogenous variables"
                    : "undeclared variable '" + var.text + "'");
    expect(Tok::assign);
    Token vt = peek();
    Value v = parse_signed();
    if (range_index(sig_.range_of(var.text), v) < 0)
      fail(vt, "value " + std::to_string(v) + " is not in the range of '" +
                   var.text + "'");
    PlausCell cell{var.text, v, {}};
    if (peek().kind == Tok::pipe) {
      next();
      while (true) {
        Token p = expect(Tok::ident);
        if (sig_.endo_index(p.text) < 0)
          fail(p, sig_.exo_index(p.text) >= 0
                      ? "'" + p.text + "' is exogenous; conditions name "
                        "endogenous parents"
                      : "undeclared variable '" + p.text + "'");
        for (const auto& [seen, unused] : cell.given)
          if (seen == p.text)
            fail(p, "condition repeats '" + p.text + "'");
        expect(Tok::assign);
        Token pvt = peek();
        Value pv = parse_signed();
        if (range_index(sig_.range_of(p.text), pv) < 0)
          fail(pvt, "value " + std::to_string(pv) +
                        " is not in the range of '" + p.text + "'");
        cell.given.emplace_back(p.text, pv);
        if (peek().kind != Tok::comma) break;
        next();
      }
    }
    expect(Tok::rparen);
    return cell;
  }

  void parse_plaus() {
    expect_keyword("plaus");
    expect(Tok::lbrace);
    while (peek().kind != Tok::rbrace) {
      std::vector<PlausCell> chain{parse_cell()};
      while (peek().kind == Tok::gt) {
        next();
        chain.push_back(parse_cell());
      }
      doc_.spec.chains.push_back(std::move(chain));
    }
    expect(Tok::rbrace);
  }

  void parse_override() {
    expect_keyword("override");
    Token var = expect(Tok::ident);
    if (sig_.endo_index(var.text) < 0)
      fail(var, "undeclared variable '" + var.text + "'");
    if (doc_.spec.overrides.count(var.text))
      fail(var, "second override for '" + var.text + "'");
    expect(Tok::lbrace);
    CptOverride ov;
    if (at_section("parents") && peek(1).kind == Tok::colon) {
      next();
      next();
      while (true) {
        Token p = expect(Tok::ident);
        if (sig_.endo_index(p.text) < 0)
          fail(p, sig_.exo_index(p.text) >= 0
                      ? "'" + p.text +
                            "' is exogenous and cannot be a table parent"
                      : "undeclared variable '" + p.text + "'");
        for (const auto& seen : ov.parents)
          if (seen == p.text) fail(p, "parent '" + p.text + "' repeats");
        ov.parents.push_back(p.text);
        if (peek().kind != Tok::comma) break;
        next();
      }
    }
    std::set<std::pair<Value, std::vector<std::pair<std::string, Value>>>>
        seen_rows;
    while (peek().kind != Tok::rbrace) {
      Token at = peek();
      PlausCell cell = parse_cell();
      if (cell.var != var.text)
        fail(at, "row declares '" + cell.var + "' inside the override for '" +
                     var.text + "'");
      for (const auto& [pname, unused] : cell.given)
        if (std::find(ov.parents.begin(), ov.parents.end(), pname) ==
            ov.parents.end())
          fail(at, cell_to_string(cell) + " conditions on '" + pname +
                       "', which is not a declared parent");
      expect(Tok::assign);
      Token atom = expect(Tok::ident);
      auto key = std::make_pair(cell.value, cell.given);
      std::sort(key.second.begin(), key.second.end());
      if (!seen_rows.insert(key).second)
        fail(at, "duplicate row " + cell_to_string(cell));
      ov.rows.push_back({cell.value, std::move(cell.given), atom.text});
    }
    expect(Tok::rbrace);
    doc_.spec.overrides[var.text] = std::move(ov);
  }

  void parse_context() {
    expect_keyword("context");
    Token name = expect(Tok::ident);
    for (const auto& c : doc_.contexts)
      if (c.name == name.text)
        fail(name, "second context named '" + name.text + "'");
    expect(Tok::lbrace);
    NamedContext ctx{name.text, {}};
    while (peek().kind != Tok::rbrace) {
      Token var = expect(Tok::ident);
      if (!sig_.has(var.text))
        fail(var, "undeclared variable '" + var.text + "'");
      int ei = sig_.endo_index(var.text);
      if (ei >= 0 && doc_.spec.model.has_equation(ei))
        fail(var, "'" + var.text +
                      "' is computed by an equation; contexts assign "
                      "exogenous variables and input roots");
      if (ctx.values.count(var.text))
        fail(var, "context assigns '" + var.text + "' twice");
      expect(Tok::assign);
      Token vt = peek();
      Value v = parse_signed();
      if (range_index(sig_.range_of(var.text), v) < 0)
        fail(vt, "value " + std::to_string(v) + " is not in the range of '" +
                     var.text + "'");
      ctx.values[var.text] = v;
    }
    expect(Tok::rbrace);
    doc_.contexts.push_back(std::move(ctx));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<Variable> endo_, exo_;
  std::set<std::string> declared_;
  Signature sig_;
  ModelDocument doc_;
};

}  // namespace

ModelDocument parse_document(const std::string& text) {
  return Parser(text).run();
}

}  // namespace excm
