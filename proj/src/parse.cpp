#include "dialog/parse.hpp"

#include <algorithm>
#include <cctype>

namespace dialog {
namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void expect(char c) {
    if (peek() != c) fail(ErrorKind::syntax, std::string("expected '") + c + "'" + found());
    ++pos_;
  }

  bool consume(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == '"' ||
          c == ';')
        break;
      ++pos_;
    }
    auto token = text_.substr(start, pos_ - start);
    if (token.empty()) {
      pos_ = start;
      fail(ErrorKind::syntax, "expected an identifier" + found());
    }
    if (!is_valid_identifier(token)) {
      pos_ = start;
      fail(ErrorKind::syntax, "invalid identifier '" + std::string(token) + "'");
    }
    return std::string(token);
  }

  std::string quoted() {
    expect('"');
    std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '"' && text_[pos_] != '\n') ++pos_;
    if (pos_ >= text_.size() || text_[pos_] != '"') {
      pos_ = start;
      fail(ErrorKind::syntax, "unterminated type tag");
    }
    auto tag = std::string(text_.substr(start, pos_ - start));
    ++pos_;
    return tag;
  }

  std::size_t position() const { return pos_; }
  void rewind(std::size_t pos) { pos_ = pos; }

  [[noreturn]] void fail(ErrorKind kind, const std::string& msg) const { fail_at(kind, msg, pos_); }

  [[noreturn]] void fail_at(ErrorKind kind, const std::string& msg, std::size_t at) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(kind, msg + " at " + std::to_string(line) + ":" + std::to_string(col), at,
                     line, col);
  }

 private:
  std::string found() const {
    if (pos_ >= text_.size()) return ", found end of input";
    return std::string(", found '") + text_[pos_] + "'";
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

Expr read_expr(Reader& in) {
  const std::size_t start = in.position();
  in.expect('(');
  const std::size_t tag_at = in.position();
  auto tag = in.quoted();
  auto type = parse_type(tag);
  if (!type) in.fail_at(ErrorKind::unknown_type, "unknown type tag \"" + tag + "\"", tag_at);
  std::vector<Expr> terms;
  while (in.peek() != ')') {
    if (in.peek() == '\0') in.fail(ErrorKind::syntax, "unterminated expression");
    if (in.peek() == '(') {
      terms.push_back(read_expr(in));
    } else {
      terms.push_back(Expr::leaf(in.ident()));
    }
  }
  if (terms.empty()) in.fail(ErrorKind::syntax, "numerator " + tag + " has no terms");
  in.expect(')');
  auto e = Expr::node(*type, std::move(terms));
  try {
    validate(e);
  } catch (const DialogError& err) {
    // nested expressions are validated with their own numerator; report at the opening paren
    in.fail_at(err.kind(), err.what(), start);
  }
  return e;
}

}  // namespace

SpecUnion parse_spec(std::string_view text) {
  Reader in(text);
  SpecUnion spec;
  if (in.at_end()) in.fail(ErrorKind::syntax, "empty specification");
  while (!in.at_end()) {
    const std::size_t at = in.position();
    auto e = read_expr(in);
    if (!spec.exprs.empty() && e.questions() != spec.exprs.front().questions())
      in.fail_at(ErrorKind::question_mismatch,
                 "union member ranges over a different question set", at);
    if (std::find(spec.exprs.begin(), spec.exprs.end(), e) == spec.exprs.end())
      spec.exprs.push_back(std::move(e));
  }
  return spec;
}

EnumeratedSpec parse_episodes(std::string_view text) {
  Reader in(text);
  EnumeratedSpec spec;
  in.expect('(');
  bool first = true;
  while (in.peek() != ')') {
    if (in.peek() == '\0') in.fail(ErrorKind::syntax, "unterminated episode list");
    const std::size_t at = in.position();
    in.expect('(');
    Episode ep;
    QuestionSet seen;
    auto add = [&](const std::string& q, std::size_t q_at) {
      if (!seen.insert(q).second)
        in.fail_at(ErrorKind::overlap, "question '" + q + "' answered twice in one episode",
                   q_at);
    };
    while (in.peek() != ')') {
      if (in.peek() == '\0') in.fail(ErrorKind::syntax, "unterminated episode");
      if (in.consume('(')) {
        AbstractUtterance u;
        while (in.peek() != ')') {
          const std::size_t q_at = in.position();
          auto q = in.ident();
          add(q, q_at);
          u.insert(q);
        }
        if (u.size() < 2)
          in.fail(ErrorKind::syntax, "a parenthesized utterance needs at least two questions");
        in.expect(')');
        ep.push_back(std::move(u));
      } else {
        const std::size_t q_at = in.position();
        auto q = in.ident();
        add(q, q_at);
        ep.push_back({q});
      }
    }
    in.expect(')');
    if (ep.empty()) in.fail_at(ErrorKind::syntax, "empty episode", at);
    if (first) {
      spec.questions = seen;
      first = false;
    } else if (seen != spec.questions) {
      in.fail_at(ErrorKind::coverage,
                 "episode " + render_episode(ep) + " covers a different question set", at);
    }
    spec.episodes.insert(std::move(ep));
  }
  in.expect(')');
  if (spec.episodes.empty()) in.fail(ErrorKind::syntax, "no episodes");
  if (!in.at_end()) in.fail(ErrorKind::syntax, "trailing input after episode list");
  return spec;
}

Domains parse_domains(std::string_view text) {
  Reader in(text);
  Domains out;
  if (in.at_end()) in.fail(ErrorKind::syntax, "no domains");
  while (!in.at_end()) {
    const std::size_t at = in.position();
    in.expect('(');
    auto kw = in.ident();
    if (kw != "domain") in.fail_at(ErrorKind::syntax, "expected 'domain'", at + 1);
    ResponseDomain d;
    d.question = in.ident();
    in.expect('(');
    while (in.peek() != ')') {
      if (in.peek() == '\0') in.fail(ErrorKind::syntax, "unterminated value list");
      auto v = in.ident();
      if (!d.contains(v)) d.allowed.push_back(std::move(v));
    }
    if (d.allowed.empty())
      in.fail(ErrorKind::empty_domain, "domain for '" + d.question + "' is empty");
    in.expect(')');
    in.expect(')');
    if (out.count(d.question))
      in.fail_at(ErrorKind::duplicate_domain, "duplicate domain for '" + d.question + "'", at);
    auto key = d.question;
    out.emplace(std::move(key), std::move(d));
  }
  return out;
}

}  // namespace dialog
