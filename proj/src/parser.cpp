#include "gnoop/parser.hpp"

#include <cctype>
#include <set>

namespace gnoop {

namespace {

enum class Tok {
  Ident,
  LAngle,
  RAngle,
  Comma,
  Colon,
  Semi,
  LParen,
  RParen,
  LBrace,
  RBrace,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceSpan span;
};

bool is_delim(char c) {
  switch (c) {
    case '<':
    case '>':
    case ',':
    case ':':
    case ';':
    case '(':
    case ')':
    case '{':
    case '}':
    case '/':
      return true;
    default:
      return false;
  }
}

bool is_keyword(const std::string& s) {
  return s == "constructor" || s == "extends" || s == "field" || s == "method";
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  // Tokenizes the whole input; returns false after recording E000.
  bool run(std::vector<Token>& out, std::vector<Diagnostic>& diags) {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\n') {
        advance_line();
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
        ++col_;
        continue;
      }
      if (c == '/') {
        if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
          while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
          continue;  // newline handled next iteration
        }
        diags.push_back(make_error(diag::syntax_error, "stray '/'",
                                   SourceSpan{line_, col_, 1}));
        return false;
      }
      SourceSpan span{line_, col_, 1};
      Tok kind;
      switch (c) {
        case '<': kind = Tok::LAngle; break;
        case '>': kind = Tok::RAngle; break;
        case ',': kind = Tok::Comma; break;
        case ':': kind = Tok::Colon; break;
        case ';': kind = Tok::Semi; break;
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case '{': kind = Tok::LBrace; break;
        case '}': kind = Tok::RBrace; break;
        default: kind = Tok::Ident; break;
      }
      if (kind != Tok::Ident) {
        out.push_back(Token{kind, std::string(1, c), span});
        ++pos_;
        ++col_;
        continue;
      }
      std::size_t start = pos_;
      while (pos_ < src_.size() && !is_delim(src_[pos_]) &&
             !std::isspace(static_cast<unsigned char>(src_[pos_])))
        ++pos_;
      std::string text(src_.substr(start, pos_ - start));
      span.length = static_cast<int>(text.size());
      col_ += static_cast<int>(text.size());
      out.push_back(Token{Tok::Ident, std::move(text), span});
    }
    out.push_back(Token{Tok::End, "", SourceSpan{line_, col_, 0}});
    return true;
  }

 private:
  void advance_line() {
    ++pos_;
    ++line_;
    col_ = 1;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::LAngle: return "'<'";
    case Tok::RAngle: return "'>'";
    case Tok::Comma: return "','";
    case Tok::Colon: return "':'";
    case Tok::Semi: return "';'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::End: return "end of input";
  }
  return "?";
}

class Parser {
 public:
  Parser(std::vector<Token> toks, const ParseOptions& opts)
      : toks_(std::move(toks)), opts_(opts) {}

  Checked<ConstructorEnvironment> parse_environment() {
    ConstructorEnvironment env;
    while (peek().kind != Tok::End) {
      if (!(peek().kind == Tok::Ident && peek().text == "constructor")) {
        error("expected 'constructor'");
        if (!recover()) break;
        continue;
      }
      std::size_t before = diags_.size();
      SignatureConstructor sc;
      if (!parse_constructor(sc)) {
        // diagnostics already recorded; resync on the next declaration
        (void)before;
        if (!recover()) break;
        continue;
      }
      if (!env.insert(sc)) {
        diags_.push_back(make_error(
            diag::duplicate_constructor,
            "duplicate constructor name '" + sc.name.text + "'", sc.span));
      }
    }
    Checked<ConstructorEnvironment> out;
    out.diagnostics = std::move(diags_);
    if (!has_errors(out.diagnostics)) out.value = std::move(env);
    return out;
  }

  // Bare identifiers read as variables only when reads_as_var says so.
  Checked<TypeName> parse_single_type(const ConstructorEnvironment& env) {
    std::set<std::string> no_scope;
    TypeName t;
    bool ok = parse_type(no_scope, &env, t);
    if (ok && peek().kind != Tok::End)
      error("unexpected trailing input after type name");
    Checked<TypeName> out;
    out.diagnostics = std::move(diags_);
    if (ok && !has_errors(out.diagnostics)) out.value = std::move(t);
    return out;
  }

 private:
  const Token& peek(std::size_t n = 0) const {
    std::size_t i = pos_ + n;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  void error(const std::string& msg) {
    diags_.push_back(make_error(diag::syntax_error,
                                msg + ", found " + tok_name(peek().kind),
                                peek().span));
  }

  bool expect(Tok kind, const char* what) {
    if (peek().kind != kind) {
      error(std::string("expected ") + what);
      return false;
    }
    next();
    return true;
  }

  // Skips to the next top-level 'constructor' keyword.
  bool recover() {
    while (peek().kind != Tok::End) {
      if (peek().kind == Tok::Ident && peek().text == "constructor")
        return true;
      next();
    }
    return false;
  }

  bool parse_ident(std::string& out, SourceSpan& span, const char* what) {
    if (peek().kind != Tok::Ident || is_keyword(peek().text)) {
      error(std::string("expected ") + what);
      return false;
    }
    const Token& t = next();
    out = t.text;
    span = t.span;
    return true;
  }

  // Collects the variable names of a tvar list without consuming tokens,
  // so that bounds may reference any sibling variable of the same list.
  std::set<std::string> scan_tvar_names() const {
    std::set<std::string> names;
    int depth = 1;  // caller sits right after '<'
    bool expect_name = true;
    for (std::size_t i = pos_;; ++i) {
      const Token& t = i < toks_.size() ? toks_[i] : toks_.back();
      if (t.kind == Tok::End) break;
      if (t.kind == Tok::LAngle) depth++;
      if (t.kind == Tok::RAngle) {
        if (--depth == 0) break;
      }
      if (t.kind == Tok::Comma && depth == 1) {
        expect_name = true;
        continue;
      }
      if (expect_name && t.kind == Tok::Ident && !is_keyword(t.text)) {
        names.insert(t.text);
        expect_name = false;
      }
    }
    return names;
  }

  // tvarlist ::= tvar ("," tvar)* ; tvar ::= IDENT ("extends" type)?
  // `scope` is the full variable scope the bounds are parsed under.
  bool parse_tvar_list(std::vector<BoundedVar>& out,
                       const std::set<std::string>& scope) {
    if (peek().kind == Tok::RAngle) {
      next();
      return true;
    }
    std::set<std::string> seen;
    while (true) {
      BoundedVar bv;
      std::string name;
      SourceSpan span;
      if (!parse_ident(name, span, "type variable name")) return false;
      bv.var = TypeVarName{name};
      bv.span = span;
      if (!seen.insert(name).second) {
        diags_.push_back(make_error(
            diag::duplicate_type_variable,
            "duplicate type variable '" + name + "' in one list", span));
      }
      if (peek().kind == Tok::Ident && peek().text == "extends") {
        next();
        if (!parse_type(scope, nullptr, bv.bound)) return false;
      } else {
        bv.bound = TypeName::app(opts_.top.text);
      }
      out.push_back(std::move(bv));
      if (peek().kind == Tok::Comma) {
        next();
        continue;
      }
      return expect(Tok::RAngle, "'>'");
    }
  }

  // type ::= IDENT ("<" typelist? ">")?
  // A bare identifier reads as a variable when it is in scope (declaration
  // context) or unbound in env (single-type context); the variable reading
  // has priority in both.
  bool parse_type(const std::set<std::string>& scope,
                  const ConstructorEnvironment* env, TypeName& out) {
    std::string name;
    SourceSpan span;
    if (!parse_ident(name, span, "type")) return false;
    if (peek().kind == Tok::LAngle) {
      next();
      out = TypeName::app(name);
      if (peek().kind == Tok::RAngle) {
        next();
        return true;
      }
      while (true) {
        TypeName arg;
        if (!parse_type(scope, env, arg)) return false;
        out.args.push_back(std::move(arg));
        if (peek().kind == Tok::Comma) {
          next();
          continue;
        }
        return expect(Tok::RAngle, "'>'");
      }
    }
    bool as_var = env ? !env->contains(name) : scope.count(name) != 0;
    out = as_var ? TypeName::var(name) : TypeName::app(name);
    return true;
  }

  bool parse_type_list(const std::set<std::string>& scope, Tok terminator,
                       std::vector<TypeName>& out) {
    if (peek().kind == terminator) {
      next();
      return true;
    }
    while (true) {
      TypeName t;
      if (!parse_type(scope, nullptr, t)) return false;
      out.push_back(std::move(t));
      if (peek().kind == Tok::Comma) {
        next();
        continue;
      }
      return expect(terminator,
                    terminator == Tok::RAngle ? "'>'" : "closing delimiter");
    }
  }

  bool parse_constructor(SignatureConstructor& sc) {
    next();  // 'constructor'
    std::string name;
    SourceSpan span;
    if (!parse_ident(name, span, "constructor name")) return false;
    sc.name = Name{name};
    sc.span = span;

    std::set<std::string> class_scope;
    if (peek().kind == Tok::LAngle) {
      next();
      class_scope = scan_tvar_names();
      if (!parse_tvar_list(sc.tvars, class_scope)) return false;
    }

    if (!(peek().kind == Tok::Ident && peek().text == "extends")) {
      error("expected 'extends'");
      return false;
    }
    next();
    if (!expect(Tok::LBrace, "'{'")) return false;
    if (!parse_type_list(class_scope, Tok::RBrace, sc.supers)) return false;

    if (!expect(Tok::LBrace, "'{'")) return false;
    while (peek().kind != Tok::RBrace) {
      if (peek().kind == Tok::Ident && peek().text == "field") {
        next();
        FieldSig f;
        if (!parse_ident(f.label, span, "field label")) return false;
        f.span = span;
        if (!expect(Tok::Colon, "':'")) return false;
        if (!parse_type(class_scope, nullptr, f.type)) return false;
        if (!expect(Tok::Semi, "';'")) return false;
        sc.fields.push_back(std::move(f));
        continue;
      }
      if (peek().kind == Tok::Ident && peek().text == "method") {
        next();
        MethodSig m;
        if (!parse_ident(m.label, span, "method label")) return false;
        m.span = span;
        std::set<std::string> method_scope = class_scope;
        if (peek().kind == Tok::LAngle) {
          next();
          for (const std::string& n : scan_tvar_names()) method_scope.insert(n);
          if (!parse_tvar_list(m.mtvars, method_scope)) return false;
        }
        if (!expect(Tok::LParen, "'('")) return false;
        if (!parse_type_list(method_scope, Tok::RParen, m.params)) return false;
        if (!expect(Tok::Colon, "':'")) return false;
        if (!parse_type(method_scope, nullptr, m.ret)) return false;
        if (!expect(Tok::Semi, "';'")) return false;
        sc.methods.push_back(std::move(m));
        continue;
      }
      error("expected 'field', 'method' or '}'");
      return false;
    }
    next();  // '}'
    return true;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  ParseOptions opts_;
  std::vector<Diagnostic> diags_;
};

}  // namespace

Checked<ConstructorEnvironment> parse_env(std::string_view source,
                                          const ParseOptions& opts) {
  std::vector<Token> toks;
  std::vector<Diagnostic> diags;
  if (!Lexer(source).run(toks, diags))
    return Checked<ConstructorEnvironment>::failure(std::move(diags));
  return Parser(std::move(toks), opts).parse_environment();
}

Checked<TypeName> parse_type_name(std::string_view source,
                                  const ConstructorEnvironment& env) {
  std::vector<Token> toks;
  std::vector<Diagnostic> diags;
  if (!Lexer(source).run(toks, diags))
    return Checked<TypeName>::failure(std::move(diags));
  return Parser(std::move(toks), ParseOptions{}).parse_single_type(env);
}

std::string render(const TypeName& t) { return to_string(t); }

namespace {

void render_tvars(const std::vector<BoundedVar>& tvars, const TypeName& top,
                  std::string& out) {
  if (tvars.empty()) return;
  out += '<';
  for (std::size_t i = 0; i < tvars.size(); ++i) {
    if (i > 0) out += ',';
    out += tvars[i].var.text;
    if (!(tvars[i].bound == top)) {
      out += " extends ";
      out += to_string(tvars[i].bound);
    }
  }
  out += '>';
}

}  // namespace

std::string render(const SignatureConstructor& sc, const ParseOptions& opts) {
  const TypeName top = TypeName::app(opts.top.text);
  std::string out = "constructor " + sc.name.text;
  render_tvars(sc.tvars, top, out);
  out += " extends {";
  for (std::size_t i = 0; i < sc.supers.size(); ++i) {
    out += i == 0 ? " " : ", ";
    out += to_string(sc.supers[i]);
  }
  if (!sc.supers.empty()) out += ' ';
  out += "}";
  if (sc.fields.empty() && sc.methods.empty()) {
    out += " {}";
    return out;
  }
  out += " {\n";
  for (const FieldSig& f : sc.fields)
    out += "  field " + f.label + ": " + to_string(f.type) + ";\n";
  for (const MethodSig& m : sc.methods) {
    out += "  method " + m.label;
    render_tvars(m.mtvars, top, out);
    out += '(';
    for (std::size_t i = 0; i < m.params.size(); ++i) {
      if (i > 0) out += ',';
      out += to_string(m.params[i]);
    }
    out += "): " + to_string(m.ret) + ";\n";
  }
  out += "}";
  return out;
}

std::string render(const ConstructorEnvironment& env,
                   const ParseOptions& opts) {
  std::string out;
  for (const SignatureConstructor& sc : env.constructors()) {
    out += render(sc, opts);
    out += '\n';
  }
  return out;
}

}  // namespace gnoop
