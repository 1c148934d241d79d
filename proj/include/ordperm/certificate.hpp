#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ordperm/lex.hpp"

namespace ordperm {

// ---------------------------------------------------------------------------
// Words

struct Letter {
  std::string name;
  bool inverse = false;
  friend bool operator==(const Letter&, const Letter&) = default;
};

/// A product of named letters, read left to right (right action). The empty
/// word is rendered "1".
using Word = std::vector<Letter>;

inline Word letter(std::string name) { return {{std::move(name), false}}; }

inline Word inv(const Word& w) {
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->name, !it->inverse});
  return out;
}

inline Word operator*(Word a, const Word& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

/// x^y = y^-1 x y
inline Word conj(const Word& x, const Word& y) { return inv(y) * x * y; }
/// [x, y] = x^-1 y^-1 x y
inline Word comm(const Word& x, const Word& y) { return inv(x) * inv(y) * x * y; }

inline std::string word_str(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += " ";
    s += w[i].name;
    if (w[i].inverse) s += "^-1";
  }
  return s;
}

inline bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

inline Word parse_word(Cursor& cur) {
  Word w;
  cur.skip_ws();
  if (cur.accept("1")) return w;
  while (!cur.done() && is_name_char(cur.peek())) {
    std::string name(cur.take_while(is_name_char));
    bool inverse = cur.accept("^-1");
    w.push_back({std::move(name), inverse});
    if (!cur.accept(" ")) break;
  }
  if (w.empty()) cur.error("expected word");
  return w;
}

// ---------------------------------------------------------------------------
// Certificates

enum class Claim { NotEqual, Equal };

/// Self-contained evaluation record: named elements, named words over them,
/// and a claim comparing the images of a point under two words.
struct WitnessCert {
  std::string kind;
  TowerModel model;
  std::vector<std::string> notes;
  std::vector<std::pair<std::string, LexAut>> elements;
  std::vector<std::pair<std::string, Word>> words;
  Word lhs;
  Word rhs;
  Claim claim = Claim::NotEqual;
  Point point;
  Point lhs_image;
  Point rhs_image;

  friend bool operator==(const WitnessCert&, const WitnessCert&) = default;
};

namespace detail {

inline void write_point(std::ostream& os, const Point& p) {
  if (p.size() == 1) os << p[0].str();
  else os << p.str();
}

inline Point read_point(Cursor& cur, int depth) {
  if (depth == 1) return Point({parse_rat(cur)});
  return parse_point(cur);
}

inline void write_element(std::ostream& os, const LexAut& g) {
  if (g.depth() == 1) os << g.top().str();
  else os << g.str();
}

inline LexAut read_element(Cursor& cur, int depth) {
  if (depth == 1) return LexAut::of(parse_plmap(cur));
  return parse_lexaut(cur, depth);
}

}  // namespace detail

inline std::string cert_str(const WitnessCert& c) {
  std::ostringstream os;
  os << "CERT " << c.kind << "\n";
  os << "MODEL " << c.model.str() << "\n";
  for (const auto& n : c.notes) os << "NOTE " << n << "\n";
  for (const auto& [name, g] : c.elements) {
    os << "ELEM " << name << " = ";
    detail::write_element(os, g);
    os << "\n";
  }
  for (const auto& [name, w] : c.words) os << "WORD " << name << " = " << word_str(w) << "\n";
  os << "LHS " << word_str(c.lhs) << "\n";
  os << "RHS " << word_str(c.rhs) << "\n";
  os << "CLAIM " << (c.claim == Claim::NotEqual ? "ne" : "eq") << " AT ";
  detail::write_point(os, c.point);
  os << ": ";
  detail::write_point(os, c.lhs_image);
  os << " vs ";
  detail::write_point(os, c.rhs_image);
  os << "\nEND\n";
  return os.str();
}

namespace detail {

inline std::string read_line(Cursor& cur) {
  std::string line(cur.take_while([](char c) { return c != '\n'; }));
  cur.accept("\n");
  return line;
}

inline void check_name(Cursor& cur, const std::string& name) {
  if (name.empty() || !std::all_of(name.begin(), name.end(), is_name_char) || name == "1")
    cur.error("bad name '" + name + "'");
}

}  // namespace detail

/// Parses one certificate starting at the cursor (which must be at "CERT").
inline WitnessCert parse_cert(Cursor& cur) {
  WitnessCert c;
  cur.expect("CERT ");
  c.kind = detail::read_line(cur);
  cur.expect("MODEL ");
  {
    std::size_t l = cur.line(), col = cur.column();
    std::string m = detail::read_line(cur);
    try {
      c.model = parse_model(m);
    } catch (const ParseError& e) {
      throw ParseError(l, col, e.what());
    }
  }
  const int depth = c.model.depth();
  while (cur.accept("NOTE ")) c.notes.push_back(detail::read_line(cur));
  while (cur.accept("ELEM ")) {
    std::string name(cur.take_while(is_name_char));
    detail::check_name(cur, name);
    cur.expect(" = ");
    c.elements.emplace_back(name, detail::read_element(cur, depth));
    cur.expect("\n");
  }
  while (cur.accept("WORD ")) {
    std::string name(cur.take_while(is_name_char));
    detail::check_name(cur, name);
    cur.expect(" =");
    c.words.emplace_back(name, parse_word(cur));
    cur.expect("\n");
  }
  cur.expect("LHS");
  c.lhs = parse_word(cur);
  cur.expect("\n");
  cur.expect("RHS");
  c.rhs = parse_word(cur);
  cur.expect("\n");
  cur.expect("CLAIM ");
  if (cur.accept("ne")) c.claim = Claim::NotEqual;
  else if (cur.accept("eq")) c.claim = Claim::Equal;
  else cur.error("expected 'ne' or 'eq'");
  cur.expect(" AT ");
  c.point = detail::read_point(cur, depth);
  cur.expect(": ");
  c.lhs_image = detail::read_point(cur, depth);
  cur.expect(" vs ");
  c.rhs_image = detail::read_point(cur, depth);
  cur.expect("\n");
  cur.expect("END");
  cur.accept("\n");
  return c;
}

inline WitnessCert parse_cert(std::string_view text) {
  Cursor cur(text);
  WitnessCert c = parse_cert(cur);
  cur.skip_ws();
  if (!cur.done()) cur.error("trailing text after certificate");
  return c;
}

/// All certificates in a file, in order.
inline std::vector<WitnessCert> parse_cert_file(std::string_view text) {
  std::vector<WitnessCert> out;
  Cursor cur(text);
  cur.skip_ws();
  while (!cur.done()) {
    out.push_back(parse_cert(cur));
    cur.skip_ws();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Checking: evaluation only, one letter at a time.

namespace detail {

class Evaluator {
 public:
  explicit Evaluator(const WitnessCert& c) : cert_(c) {
    for (const auto& [name, g] : c.elements) {
      if (g.depth() != c.model.depth()) fail(ErrorCode::MalformedCert, "element " + name + " has wrong depth");
      if (!elems_.emplace(name, &g).second) fail(ErrorCode::MalformedCert, "duplicate name " + name);
    }
    for (const auto& [name, w] : c.words) {
      for (const auto& l : w) {
        if (!elems_.count(l.name) && !words_.count(l.name))
          fail(ErrorCode::MalformedCert, "word " + name + " references unknown name " + l.name);
      }
      if (elems_.count(name) || !words_.emplace(name, &w).second)
        fail(ErrorCode::MalformedCert, "duplicate name " + name);
    }
    for (const Word* w : {&c.lhs, &c.rhs}) {
      for (const auto& l : *w) {
        if (!elems_.count(l.name) && !words_.count(l.name))
          fail(ErrorCode::MalformedCert, "unknown name " + l.name);
      }
    }
    if (c.point.size() != c.model.depth() || c.lhs_image.size() != c.model.depth() ||
        c.rhs_image.size() != c.model.depth())
      fail(ErrorCode::MalformedCert, "point of wrong length");
  }

  Point run(const Word& w, Point p, bool inverse = false) const {
    if (!inverse) {
      for (const auto& l : w) p = step(l, std::move(p), false);
    } else {
      for (auto it = w.rbegin(); it != w.rend(); ++it) p = step(*it, std::move(p), true);
    }
    return p;
  }

 private:
  Point step(const Letter& l, Point p, bool outer_inverse) const {
    bool invert = l.inverse != outer_inverse;
    if (auto it = elems_.find(l.name); it != elems_.end()) {
      return invert ? lex_apply_inverse(*it->second, p) : lex_apply(*it->second, p);
    }
    return run(*words_.at(l.name), std::move(p), invert);
  }

  const WitnessCert& cert_;
  std::map<std::string, const LexAut*> elems_;
  std::map<std::string, const Word*> words_;
};

}  // namespace detail

/// Re-evaluates both words at the stored point. True iff both stored images
/// are reproduced and the claimed relation holds between them.
inline bool check_cert(const WitnessCert& c) {
  detail::Evaluator ev(c);
  Point l = ev.run(c.lhs, c.point);
  Point r = ev.run(c.rhs, c.point);
  if (l != c.lhs_image || r != c.rhs_image) return false;
  return c.claim == Claim::NotEqual ? l != r : l == r;
}

// ---------------------------------------------------------------------------
// Building. Images are computed by composing the words into group elements,
// a different route from the letter-by-letter evaluation of check_cert.

class CertBuilder {
 public:
  CertBuilder(std::string kind, TowerModel model) {
    cert_.kind = std::move(kind);
    cert_.model = std::move(model);
  }

  CertBuilder& note(std::string n) {
    cert_.notes.push_back(std::move(n));
    return *this;
  }

  /// Registers an element and returns it as a one-letter word.
  Word elem(const std::string& name, const LexAut& g) {
    if (g.depth() != cert_.model.depth()) fail(ErrorCode::ModelMismatch, "element " + name + " depth");
    cert_.elements.emplace_back(name, g);
    values_.emplace(name, g);
    return letter(name);
  }
  Word elem(const std::string& name, const PLMap& g) { return elem(name, LexAut::of(g)); }

  /// Registers a named word and returns it as a one-letter word.
  Word word(const std::string& name, const Word& w) {
    LexAut v = value(w);
    cert_.words.emplace_back(name, w);
    values_.emplace(name, std::move(v));
    return letter(name);
  }

  /// The group element a word denotes.
  LexAut value(const Word& w) const {
    LexAut out = LexAut::identity(cert_.model.depth());
    for (const auto& l : w) {
      auto it = values_.find(l.name);
      if (it == values_.end()) fail(ErrorCode::MalformedCert, "unknown name " + l.name);
      out = out * (l.inverse ? lex_inverse(it->second) : it->second);
    }
    return out;
  }

  WitnessCert finish(const Word& lhs, const Word& rhs, Claim claim, const Point& at) const {
    WitnessCert c = cert_;
    c.lhs = lhs;
    c.rhs = rhs;
    c.claim = claim;
    c.point = at;
    c.lhs_image = lex_apply(value(lhs), at);
    c.rhs_image = lex_apply(value(rhs), at);
    return c;
  }
  WitnessCert finish(const Word& lhs, const Word& rhs, Claim claim, const Rat& at) const {
    return finish(lhs, rhs, claim, Point({at}));
  }

 private:
  WitnessCert cert_;
  std::map<std::string, LexAut> values_;
};

/// A non-commutation or fixedness claim that the builder could not make hold
/// is an internal error: constructions must never emit a failing certificate.
inline const WitnessCert& require_valid(const WitnessCert& c) {
  bool holds = c.claim == Claim::NotEqual ? c.lhs_image != c.rhs_image : c.lhs_image == c.rhs_image;
  if (!holds) fail(ErrorCode::Internal, "construction produced a false claim (" + c.kind + ")");
  return c;
}

}  // namespace ordperm
