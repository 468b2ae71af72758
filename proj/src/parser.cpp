#include <cctype>
#include <vector>

#include "tacs/syntax.hpp"

namespace tacs {

const char* to_string(ParseErrorKind k) {
  switch (k) {
    case ParseErrorKind::Lex: return "Lex";
    case ParseErrorKind::Syntax: return "Syntax";
    case ParseErrorKind::TauInRestriction: return "TauInRestriction";
    case ParseErrorKind::TauInRelabelling: return "TauInRelabelling";
    case ParseErrorKind::UnguardedRecursion: return "UnguardedRecursion";
    case ParseErrorKind::UnboundVariable: return "UnboundVariable";
  }
  return "?";
}

namespace {

enum class Tok : std::uint8_t {
  End, Zero, Ident, CoIdent, KwTau, KwSigma, KwRec,
  LParen, RParen, Plus, Bar, Backslash, LBrace, RBrace,
  LBracket, RBracket, Slash, Comma, Dot,
};

struct Token {
  Tok kind;
  Span span;
  std::string text;  // Ident/CoIdent: the name (without the tick)
};

struct ParseFail {
  ParseError err;
};

class Parser {
 public:
  Parser(TermFactory& f, std::string_view src) : f_(f), src_(src) {}

  ParseResult run() {
    try {
      lex_all();
      TermId t = parse_sum();
      expect_end();
      return {t, std::nullopt};
    } catch (const ParseFail& e) {
      return {std::nullopt, e.err};
    }
  }

  // Span of the first occurrence of an unbound variable, if any.
  std::optional<std::pair<Span, std::string>> first_unbound() const { return first_unbound_; }

 private:
  [[noreturn]] void fail(ParseErrorKind kind, Span span, std::string msg) {
    throw ParseFail{ParseError{kind, span, std::move(msg)}};
  }

  void lex_all() {
    std::uint32_t i = 0;
    auto n = static_cast<std::uint32_t>(src_.size());
    auto is_ident = [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    };
    while (i < n) {
      char c = src_[i];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        ++i;
        continue;
      }
      std::uint32_t start = i;
      auto single = [&](Tok k) {
        toks_.push_back({k, {start, start + 1}, {}});
        ++i;
      };
      switch (c) {
        case '0': single(Tok::Zero); continue;
        case '(': single(Tok::LParen); continue;
        case ')': single(Tok::RParen); continue;
        case '+': single(Tok::Plus); continue;
        case '|': single(Tok::Bar); continue;
        case '\\': single(Tok::Backslash); continue;
        case '{': single(Tok::LBrace); continue;
        case '}': single(Tok::RBrace); continue;
        case '[': single(Tok::LBracket); continue;
        case ']': single(Tok::RBracket); continue;
        case '/': single(Tok::Slash); continue;
        case ',': single(Tok::Comma); continue;
        case '.': single(Tok::Dot); continue;
        default: break;
      }
      if (c == '\'') {
        std::uint32_t j = i + 1;
        if (j >= n || src_[j] < 'a' || src_[j] > 'z')
          fail(ParseErrorKind::Lex, {start, i + 1}, "expected a name after '");
        while (j < n && is_ident(src_[j])) ++j;
        std::string name(src_.substr(i + 1, j - i - 1));
        if (name == "tau" || name == "sigma" || name == "s" || name == "rec")
          fail(ParseErrorKind::Lex, {start, j}, "reserved word cannot be a co-name");
        toks_.push_back({Tok::CoIdent, {start, j}, std::move(name)});
        i = j;
        continue;
      }
      if (c >= 'a' && c <= 'z') {
        std::uint32_t j = i;
        while (j < n && is_ident(src_[j])) ++j;
        std::string word(src_.substr(i, j - i));
        Tok k = Tok::Ident;
        if (word == "tau") k = Tok::KwTau;
        else if (word == "sigma" || word == "s") k = Tok::KwSigma;
        else if (word == "rec") k = Tok::KwRec;
        toks_.push_back({k, {start, j}, std::move(word)});
        i = j;
        continue;
      }
      fail(ParseErrorKind::Lex, {start, i + 1},
           std::string("unexpected character '") + c + "'");
    }
    toks_.push_back({Tok::End, {n, n}, {}});
  }

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  Token expect(Tok k, const char* what) {
    if (peek().kind != k)
      fail(ParseErrorKind::Syntax, peek().span, std::string("expected ") + what);
    return take();
  }

  void expect_end() {
    if (peek().kind != Tok::End)
      fail(ParseErrorKind::Syntax, peek().span, "unexpected trailing input");
  }

  TermId parse_sum() {
    TermId t = parse_par();
    while (peek().kind == Tok::Plus) {
      take();
      t = f_.sum(t, parse_par());
    }
    return t;
  }

  TermId parse_par() {
    TermId t = parse_prefix();
    while (peek().kind == Tok::Bar) {
      take();
      t = f_.par(t, parse_prefix());
    }
    return t;
  }

  TermId parse_prefix() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::KwTau: {
        take();
        expect(Tok::Dot, "'.' after tau");
        return f_.act(Action::tau(), parse_prefix());
      }
      case Tok::KwSigma: {
        take();
        expect(Tok::Dot, "'.' after the clock prefix");
        return f_.clock(parse_prefix());
      }
      case Tok::CoIdent: {
        Token name = take();
        expect(Tok::Dot, "'.' after an action prefix");
        return f_.act(Action::out(f_.name_id(name.text)), parse_prefix());
      }
      case Tok::Ident: {
        if (peek(1).kind == Tok::Dot) {
          Token name = take();
          take();  // dot
          return f_.act(Action::in(f_.name_id(name.text)), parse_prefix());
        }
        return parse_postfix();  // a variable
      }
      case Tok::KwRec: {
        Token kw = take();
        Token name = expect(Tok::Ident, "a variable after rec");
        expect(Tok::Dot, "'.' after the recursion variable");
        NameId x = f_.name_id(name.text);
        binders_.push_back(x);
        TermId body = parse_prefix();
        binders_.pop_back();
        if (!f_.is_guarded(x, body))
          fail(ParseErrorKind::UnguardedRecursion, {kw.span.begin, peek().span.begin},
               "variable '" + name.text + "' is unguarded in the recursion body");
        return f_.rec(x, body);
      }
      default:
        return parse_postfix();
    }
  }

  TermId parse_postfix() {
    TermId t = parse_atom();
    for (;;) {
      if (peek().kind == Tok::Backslash) {
        take();
        expect(Tok::LBrace, "'{' after '\\'");
        std::vector<NameId> names;
        if (peek().kind != Tok::RBrace) {
          for (;;) {
            names.push_back(restriction_name());
            if (peek().kind != Tok::Comma) break;
            take();
          }
        }
        expect(Tok::RBrace, "'}' closing the restriction set");
        t = f_.restrict(t, std::move(names));
      } else if (peek().kind == Tok::LBracket) {
        take();
        std::vector<std::pair<NameId, NameId>> pairs;  // (source, target)
        if (peek().kind != Tok::RBracket) {
          for (;;) {
            NameId to = relabelling_name("target");
            expect(Tok::Slash, "'/' between target and source");
            NameId from = relabelling_name("source");
            for (const auto& [src, dst] : pairs)
              if (src == from && dst != to)
                fail(ParseErrorKind::Syntax, peek().span,
                     "relabelling maps '" + f_.name(from) + "' twice");
            pairs.emplace_back(from, to);
            if (peek().kind != Tok::Comma) break;
            take();
          }
        }
        expect(Tok::RBracket, "']' closing the relabelling");
        t = f_.relabel(t, Relabelling::from_pairs(std::move(pairs)));
      } else {
        return t;
      }
    }
  }

  NameId restriction_name() {
    const Token& t = peek();
    if (t.kind == Tok::KwTau)
      fail(ParseErrorKind::TauInRestriction, t.span, "tau cannot be restricted");
    if (t.kind == Tok::CoIdent)
      fail(ParseErrorKind::Syntax, t.span,
           "restriction sets list plain names (both polarities are blocked)");
    if (t.kind != Tok::Ident)
      fail(ParseErrorKind::Syntax, t.span, "expected a name in the restriction set");
    return f_.name_id(take().text);
  }

  NameId relabelling_name(const char* role) {
    const Token& t = peek();
    if (t.kind == Tok::KwTau)
      fail(ParseErrorKind::TauInRelabelling, t.span, "tau cannot be relabelled");
    if (t.kind != Tok::Ident)
      fail(ParseErrorKind::Syntax, t.span,
           std::string("expected a plain name as the relabelling ") + role);
    return f_.name_id(take().text);
  }

  TermId parse_atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Zero:
        take();
        return f_.nil();
      case Tok::Ident: {
        Token name = take();
        NameId x = f_.name_id(name.text);
        bool bound = false;
        for (NameId b : binders_)
          if (b == x) bound = true;
        if (!bound && !first_unbound_)
          first_unbound_ = std::make_pair(name.span, name.text);
        return f_.var(x);
      }
      case Tok::LParen: {
        take();
        TermId inner = parse_sum();
        expect(Tok::RParen, "')'");
        return inner;
      }
      default:
        fail(ParseErrorKind::Syntax, t.span, "expected a term");
    }
  }

  TermFactory& f_;
  std::string_view src_;
  std::vector<Token> toks_;
  std::size_t pos_{0};
  std::vector<NameId> binders_;
  std::optional<std::pair<Span, std::string>> first_unbound_;
};

}  // namespace

ParseResult parse(TermFactory& f, std::string_view text) {
  return Parser(f, text).run();
}

ParseProcessResult parse_process(TermFactory& f, std::string_view text) {
  Parser p(f, text);
  ParseResult r = p.run();
  if (!r.ok()) return {std::nullopt, r.error};
  if (auto unbound = p.first_unbound()) {
    return {std::nullopt,
            ParseError{ParseErrorKind::UnboundVariable, unbound->first,
                       "unbound variable '" + unbound->second + "'"}};
  }
  auto v = validate_process(f, *r.term);
  if (auto* err = std::get_if<ProcessError>(&v)) {
    // Closedness and guardedness were already enforced above, but keep a
    // defensive mapping in case of factory-built subterms.
    ParseErrorKind kind = err->kind == ProcessErrorKind::NotClosed
                              ? ParseErrorKind::UnboundVariable
                              : ParseErrorKind::UnguardedRecursion;
    return {std::nullopt, ParseError{kind, {0, 0}, "invalid process"}};
  }
  return {std::get<Process>(v), std::nullopt};
}

}  // namespace tacs
