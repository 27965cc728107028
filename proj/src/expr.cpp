#include "fracto/expr.hpp"

#include <cctype>

namespace fracto {

FractoExpr FractoExpr::frac(int threshold, std::vector<std::string> ids) {
  if (ids.empty()) throw ArityError("frac needs at least one id");
  if (threshold < 1 || threshold > static_cast<int>(ids.size()))
    throw ArityError("threshold " + std::to_string(threshold) +
                     " exceeds id list of length " + std::to_string(ids.size()));
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = i + 1; j < ids.size(); ++j)
      if (ids[i] == ids[j]) throw DuplicateId("id " + ids[i] + " listed twice");
  FractoExpr e;
  e.kind = Kind::Frac;
  e.threshold = threshold;
  e.ids = std::move(ids);
  return e;
}

namespace {

FractoExpr flatten(FractoExpr::Kind kind, std::vector<FractoExpr> children) {
  if (children.size() == 1) return std::move(children.front());
  FractoExpr e;
  e.kind = kind;
  for (auto& c : children) {
    if (c.kind == kind) {
      for (auto& gc : c.children) e.children.push_back(std::move(gc));
    } else {
      e.children.push_back(std::move(c));
    }
  }
  return e;
}

}  // namespace

FractoExpr FractoExpr::join_of(std::vector<FractoExpr> children) {
  return flatten(Kind::Join, std::move(children));
}

FractoExpr FractoExpr::meet_of(std::vector<FractoExpr> children) {
  return flatten(Kind::Meet, std::move(children));
}

bool operator==(const FractoExpr& a, const FractoExpr& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == FractoExpr::Kind::Frac)
    return a.threshold == b.threshold && a.ids == b.ids;
  return a.children == b.children;
}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  FractoExpr parse() {
    FractoExpr e = expr();
    skip_ws();
    if (pos_ != s_.size()) throw SyntaxError(pos_, "end of input");
    return e;
  }

 private:
  FractoExpr expr() {
    std::vector<FractoExpr> parts;
    parts.push_back(meet());
    while (peek_word_v()) {
      consume_word_v();
      parts.push_back(meet());
    }
    return FractoExpr::join_of(std::move(parts));
  }

  FractoExpr meet() {
    std::vector<FractoExpr> parts;
    parts.push_back(atom());
    while (true) {
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '^') {
        ++pos_;
        parts.push_back(atom());
      } else {
        break;
      }
    }
    return FractoExpr::meet_of(std::move(parts));
  }

  FractoExpr atom() {
    skip_ws();
    if (pos_ >= s_.size()) throw SyntaxError(pos_, "'(' or INT");
    if (s_[pos_] == '(') {
      ++pos_;
      FractoExpr e = expr();
      skip_ws();
      expect(')');
      return e;
    }
    return frac();
  }

  FractoExpr frac() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      throw SyntaxError(pos_, "INT");
    long value = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      value = value * 10 + (s_[pos_] - '0');
      if (value > 1'000'000) throw SyntaxError(start, "a smaller INT");
      ++pos_;
    }
    skip_ws();
    expect('/');
    skip_ws();
    expect('{');
    std::vector<std::string> ids;
    ids.push_back(ident());
    while (true) {
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == ',') {
        ++pos_;
        ids.push_back(ident());
      } else {
        break;
      }
    }
    skip_ws();
    expect('}');
    return FractoExpr::frac(static_cast<int>(value), std::move(ids));
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos_;
    auto head = [](char c) {
      return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    };
    auto tail = [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    };
    if (pos_ >= s_.size() || !head(s_[pos_])) throw SyntaxError(pos_, "ID");
    ++pos_;
    while (pos_ < s_.size() && tail(s_[pos_])) ++pos_;
    std::string id = s_.substr(start, pos_ - start);
    if (id == "v")
      throw SyntaxError(start, "ID ('v' is the join operator)");
    return id;
  }

  // "v" is an operator only as a standalone word
  bool peek_word_v() {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != 'v') return false;
    std::size_t next = pos_ + 1;
    if (next < s_.size()) {
      char c = s_[next];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') return false;
    }
    return true;
  }

  void consume_word_v() { ++pos_; }

  void expect(char c) {
    if (pos_ >= s_.size() || s_[pos_] != c)
      throw SyntaxError(pos_, std::string("'") + c + "'");
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < s_.size() &&
           std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

void print_rec(const FractoExpr& e, bool unicode, std::string& out) {
  switch (e.kind) {
    case FractoExpr::Kind::Frac: {
      out += std::to_string(e.threshold);
      out += "/{";
      for (std::size_t i = 0; i < e.ids.size(); ++i) {
        if (i) out += ",";
        out += e.ids[i];
      }
      out += "}";
      break;
    }
    case FractoExpr::Kind::Meet: {
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i) out += unicode ? " ∩ " : " ^ ";
        const FractoExpr& c = e.children[i];
        if (c.kind == FractoExpr::Kind::Join) {
          out += "(";
          print_rec(c, unicode, out);
          out += ")";
        } else {
          print_rec(c, unicode, out);
        }
      }
      break;
    }
    case FractoExpr::Kind::Join: {
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i) out += unicode ? " ∨ " : " v ";
        print_rec(e.children[i], unicode, out);
      }
      break;
    }
  }
}

}  // namespace

FractoExpr parse_expr(const std::string& text) { return Parser(text).parse(); }

std::string print_expr(const FractoExpr& e, bool unicode) {
  std::string out;
  print_rec(e, unicode, out);
  return out;
}

Fractoconvexity eval_expr(const FractoExpr& e, const Registry& reg) {
  switch (e.kind) {
    case FractoExpr::Kind::Frac: {
      std::vector<ConvPtr> members;
      for (const auto& id : e.ids) members.push_back(reg.get(id));
      return Fractoconvexity::single_block(std::move(members), e.threshold);
    }
    case FractoExpr::Kind::Join: {
      Fractoconvexity acc = eval_expr(e.children.front(), reg);
      for (std::size_t i = 1; i < e.children.size(); ++i)
        acc = join(acc, eval_expr(e.children[i], reg));
      return acc;
    }
    case FractoExpr::Kind::Meet: {
      Fractoconvexity acc = eval_expr(e.children.front(), reg);
      for (std::size_t i = 1; i < e.children.size(); ++i)
        acc = meet(acc, eval_expr(e.children[i], reg));
      return acc;
    }
  }
  throw Error("unreachable expression kind");
}

}  // namespace fracto
