#include "vakit/structure_file.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

namespace vakit {

ParseError::ParseError(std::string source, std::size_t line, std::size_t column, const std::string& message,
                       std::string expected)
    : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message +
                         (expected.empty() ? "" : " (expected " + expected + ")")),
      line_(line),
      column_(column),
      expected_(std::move(expected)),
      message_(message) {}

namespace {

struct Line {
  std::size_t no = 0;
  std::string text;
};

struct Section {
  std::size_t header_line = 0;
  std::vector<Line> lines;
};

const std::vector<std::string>& known_sections() {
  static const std::vector<std::string> s = {"kind",   "scalars", "group", "beta",  "space",   "window",
                                             "vacuum", "covacuum", "Y",    "coY",   "mspace",  "mwindow",
                                             "YM",     "coYM",    "DM",    "coDM",  "omega",   "rho"};
  return s;
}

class Cursor {
 public:
  Cursor(const std::string& src, const Line& line) : src_(src), line_(line) {}

  [[noreturn]] void fail(const std::string& msg, const std::string& expected = {}) const { fail_at(pos_, msg, expected); }
  [[noreturn]] void fail_at(std::size_t pos, const std::string& msg, const std::string& expected = {}) const {
    throw ParseError(src_, line_.no, pos + 1, msg, expected);
  }

  void skip_ws() {
    while (pos_ < text().size() && std::isspace(static_cast<unsigned char>(text()[pos_]))) ++pos_;
  }
  bool eof() {
    skip_ws();
    return pos_ >= text().size();
  }
  char peek() {
    skip_ws();
    return pos_ < text().size() ? text()[pos_] : '\0';
  }
  std::size_t pos() const { return pos_; }
  const std::string& text() const { return line_.text; }

  void expect(const std::string& tok) {
    skip_ws();
    if (text().compare(pos_, tok.size(), tok) != 0) fail("unexpected input", "'" + tok + "'");
    pos_ += tok.size();
  }
  bool accept(const std::string& tok) {
    skip_ws();
    if (text().compare(pos_, tok.size(), tok) != 0) return false;
    pos_ += tok.size();
    return true;
  }
  void expect_end() {
    if (!eof()) fail("trailing input", "end of line");
  }

  std::string word() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text().size() && !std::isspace(static_cast<unsigned char>(text()[pos_]))) ++pos_;
    if (start == pos_) fail("missing token", "a word");
    return text().substr(start, pos_ - start);
  }

  std::int64_t integer() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text().size() && (text()[pos_] == '-' || text()[pos_] == '+')) ++pos_;
    std::size_t digits = pos_;
    while (pos_ < text().size() && std::isdigit(static_cast<unsigned char>(text()[pos_]))) ++pos_;
    if (digits == pos_) {
      pos_ = start;
      fail("bad integer", "an integer");
    }
    return std::stoll(text().substr(start, pos_ - start));
  }

  /// Text up to the matching close paren, starting at '('.
  std::string parenthesized() {
    skip_ws();
    if (peek() != '(') fail("unexpected input", "'('");
    std::size_t start = pos_;
    int depth = 0;
    for (; pos_ < text().size(); ++pos_) {
      if (text()[pos_] == '(') ++depth;
      if (text()[pos_] == ')' && --depth == 0) {
        ++pos_;
        return text().substr(start, pos_ - start);
      }
    }
    fail_at(start, "unbalanced parenthesis", "')'");
  }

  Scalar scalar_token(int conductor) {
    skip_ws();
    std::size_t start = pos_;
    std::string t;
    if (peek() == '(') {
      t = parenthesized();
    } else {
      t = word();
    }
    try {
      return parse_scalar(t, conductor);
    } catch (const ScalarParseError& e) {
      fail_at(start + e.position(), std::string("bad scalar: ") + e.what());
    } catch (const ScalarError& e) {
      fail_at(start, std::string("bad scalar: ") + e.what());
    }
  }

  Scalar scalar_rest(int conductor) {
    skip_ws();
    std::size_t start = pos_;
    std::string t = text().substr(pos_);
    pos_ = text().size();
    try {
      return parse_scalar(t, conductor);
    } catch (const ScalarParseError& e) {
      fail_at(start + e.position(), std::string("bad scalar: ") + e.what());
    } catch (const ScalarError& e) {
      fail_at(start, std::string("bad scalar: ") + e.what());
    }
  }

  Index label(const GradedSpace& space, const std::string& what) {
    skip_ws();
    std::size_t start = pos_;
    std::string lab = word();
    auto idx = space.find(lab);
    if (!idx) fail_at(start, "undeclared basis label '" + lab + "'", "a label of " + what);
    return *idx;
  }

  SparseVector vector(const GradedSpace& space, int conductor, const std::string& what) {
    SparseVector out;
    if (eof()) fail("empty vector", "a vector or 0");
    if (peek() == '0') {
      std::size_t save = pos_;
      ++pos_;
      if (eof()) return out;
      pos_ = save;
    }
    bool first = true;
    while (!eof()) {
      Scalar sign(1);
      if (accept("+")) {
        if (first) fail("unexpected '+'", "a term");
      } else if (accept("-")) {
        sign = Scalar(-1);
      } else if (!first) {
        fail("unexpected input", "'+' or '-'");
      }
      first = false;
      skip_ws();
      Scalar coef(1);
      char c = peek();
      if (c == '(' || std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        std::string t;
        if (c == '(') {
          t = parenthesized();
        } else {
          while (pos_ < text().size() &&
                 (std::isdigit(static_cast<unsigned char>(text()[pos_])) || text()[pos_] == '/')) {
            ++pos_;
          }
          t = text().substr(start, pos_ - start);
        }
        try {
          coef = parse_scalar(t, conductor);
        } catch (const ScalarParseError& e) {
          fail_at(start + e.position(), std::string("bad scalar: ") + e.what());
        } catch (const ScalarError& e) {
          fail_at(start, std::string("bad scalar: ") + e.what());
        }
        if (!accept("*")) fail("coefficient without basis label", "'*'");
      }
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text().size() && !std::isspace(static_cast<unsigned char>(text()[pos_])) &&
             text()[pos_] != '+' && text()[pos_] != '*') {
        ++pos_;
      }
      std::string lab = text().substr(start, pos_ - start);
      if (lab.empty()) fail("missing basis label", "a label of " + what);
      auto idx = space.find(lab);
      if (!idx) fail_at(start, "undeclared basis label '" + lab + "'", "a label of " + what);
      out.add(*idx, sign * coef);
    }
    return out;
  }

 private:
  const std::string& src_;
  const Line& line_;
  std::size_t pos_ = 0;
};

struct Parser {
  std::string source;
  std::map<std::string, Section> sections;
  std::vector<std::string> warnings;
  std::size_t last_line = 1;

  void split(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t no = 0;
    Section* cur = nullptr;
    while (std::getline(in, raw)) {
      ++no;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      auto hash = raw.find('#');
      std::string t = hash == std::string::npos ? raw : raw.substr(0, hash);
      // '#' is allowed inside labels: only strip when it starts the line or follows whitespace
      if (hash != std::string::npos && hash > 0 && !std::isspace(static_cast<unsigned char>(raw[hash - 1]))) {
        t = raw;
        std::size_t h = hash;
        while (h != std::string::npos) {
          if (h == 0 || std::isspace(static_cast<unsigned char>(raw[h - 1]))) {
            t = raw.substr(0, h);
            break;
          }
          h = raw.find('#', h + 1);
        }
      }
      std::size_t b = t.find_first_not_of(" \t");
      if (b == std::string::npos) continue;
      last_line = no;
      std::size_t e = t.find_last_not_of(" \t");
      if (t[b] == '[') {
        if (t[e] != ']') throw ParseError(source, no, e + 2, "unterminated section header", "']'");
        std::string name = t.substr(b + 1, e - b - 1);
        bool known = false;
        for (const auto& k : known_sections()) known = known || k == name;
        if (!known) throw ParseError(source, no, b + 2, "unknown section [" + name + "]", "a known section name");
        if (sections.count(name)) throw ParseError(source, no, b + 1, "duplicate section [" + name + "]");
        cur = &sections[name];
        cur->header_line = no;
        continue;
      }
      if (cur == nullptr) throw ParseError(source, no, b + 1, "content before the first section", "'['");
      cur->lines.push_back({no, t});
    }
  }

  const Section& need(const std::string& name) const {
    auto it = sections.find(name);
    if (it == sections.end()) throw ParseError(source, 1, 1, "missing section [" + name + "]");
    return it->second;
  }
  const Section* maybe(const std::string& name) const {
    auto it = sections.find(name);
    return it == sections.end() ? nullptr : &it->second;
  }
  const Line& single_line(const std::string& name) const {
    const Section& s = need(name);
    if (s.lines.size() != 1) {
      throw ParseError(source, s.header_line, 1, "section [" + name + "] must have exactly one line");
    }
    return s.lines[0];
  }
  void forbid(const std::string& name, const std::string& kind) const {
    if (auto* s = maybe(name)) {
      throw ParseError(source, s->header_line, 1, "section [" + name + "] not allowed in a " + kind + " file");
    }
  }

  GroupElement element(Cursor& c, const GroupSpec& spec) {
    std::size_t start = (c.skip_ws(), c.pos());
    c.expect("(");
    std::vector<std::int64_t> coords;
    if (!c.accept(")")) {
      for (;;) {
        coords.push_back(c.integer());
        if (c.accept(")")) break;
        c.expect(",");
      }
    }
    if (coords.size() != spec.rank()) {
      c.fail_at(start, "degree has " + std::to_string(coords.size()) + " coordinates",
                std::to_string(spec.rank()) + " coordinates");
    }
    for (std::size_t t = 0; t < spec.torsion.size(); ++t) {
      std::size_t i = static_cast<std::size_t>(spec.free_rank) + t;
      std::int64_t m = spec.torsion[t];
      if (coords[i] < 0 || coords[i] >= m) {
        warnings.push_back(source + ":" + std::to_string(last_line_of(c)) + ": torsion coordinate " +
                           std::to_string(coords[i]) + " reduced modulo " + std::to_string(m));
      }
    }
    return GroupElement(spec, coords);
  }
  std::size_t current_line = 0;
  std::size_t last_line_of(const Cursor&) const { return current_line; }

  IntMatrix matrix(Cursor& c) {
    IntMatrix m;
    c.expect("[");
    if (c.accept("]")) return m;
    for (;;) {
      c.expect("[");
      std::vector<std::int64_t> row;
      if (!c.accept("]")) {
        for (;;) {
          row.push_back(c.integer());
          if (c.accept("]")) break;
          c.expect(",");
        }
      }
      m.push_back(row);
      if (c.accept("]")) break;
      c.expect(",");
    }
    return m;
  }

  BetaSpec simple_beta(Cursor& c, int conductor) {
    std::size_t start = (c.skip_ws(), c.pos());
    std::string w = c.word();
    if (w == "one") return BetaSpec::one();
    if (w == "zero") return BetaSpec::zero();
    if (w == "sign_bilinear") return BetaSpec::sign_bilinear(matrix(c));
    if (w == "q_bilinear") {
      Scalar q = c.scalar_token(conductor);
      return BetaSpec::q_bilinear(q, matrix(c));
    }
    c.fail_at(start, "unknown beta '" + w + "'", "one, zero, sign_bilinear, q_bilinear, table or product");
  }

  BetaSpec beta(const GroupSpec& spec, int conductor) {
    const Section& s = need("beta");
    if (s.lines.empty()) throw ParseError(source, s.header_line, 1, "empty section [beta]");
    Cursor c(source, s.lines[0]);
    current_line = s.lines[0].no;
    std::string head = s.lines[0].text;
    Cursor probe(source, s.lines[0]);
    std::string w = probe.word();
    if (w == "table") {
      probe.expect_end();
      std::map<std::pair<GroupElement, GroupElement>, Scalar> entries;
      for (std::size_t i = 1; i < s.lines.size(); ++i) {
        Cursor e(source, s.lines[i]);
        current_line = s.lines[i].no;
        GroupElement a = element(e, spec);
        GroupElement b = element(e, spec);
        e.expect("->");
        entries[{a, b}] = e.scalar_rest(conductor);
      }
      return BetaSpec::table(entries);
    }
    if (w == "product") {
      probe.expect_end();
      std::vector<BetaSpec> f;
      for (std::size_t i = 1; i < s.lines.size(); ++i) {
        Cursor e(source, s.lines[i]);
        f.push_back(simple_beta(e, conductor));
        e.expect_end();
      }
      return BetaSpec::product(f);
    }
    if (s.lines.size() != 1) throw ParseError(source, s.lines[1].no, 1, "extra line in [beta]");
    BetaSpec b = simple_beta(c, conductor);
    c.expect_end();
    return b;
  }

  SpacePtr space(const std::string& name, const GroupSpec& spec) {
    const Section& s = need(name);
    std::vector<BasisElement> basis;
    std::set<std::string> seen;
    for (const auto& l : s.lines) {
      Cursor c(source, l);
      current_line = l.no;
      GroupElement g = element(c, spec);
      if (c.eof()) c.fail("degree without labels", "basis labels");
      while (!c.eof()) {
        std::size_t start = (c.skip_ws(), c.pos());
        std::string lab = c.word();
        if (!seen.insert(lab).second) c.fail_at(start, "duplicate basis label '" + lab + "'");
        basis.push_back({lab, g});
      }
    }
    return make_space(spec, basis);
  }

  Window window(const std::string& name) {
    const Line& l = single_line(name);
    Cursor c(source, l);
    Window w;
    w.lo = c.integer();
    w.hi = c.integer();
    c.expect_end();
    return w;
  }

  SparseVector vec_section(const std::string& name, const GradedSpace& space, int conductor) {
    const Line& l = single_line(name);
    Cursor c(source, l);
    return c.vector(space, conductor, "[" + name + "]");
  }

  void put(OpFamily& ops, std::int64_t n, Index col, Index src_dim, Index tgt_dim, SparseVector v, Cursor& c) {
    auto [it, fresh] = ops.try_emplace(n, LinearMap(src_dim, tgt_dim));
    (void)fresh;
    if (!it->second.column(col).is_zero()) c.fail_at(0, "duplicate entry");
    it->second.set_column(col, std::move(v));
  }

  /// "n a b -> vec" over left (x) right -> target.
  OpFamily bilinear_ops(const std::string& name, const GradedSpace& left, const GradedSpace& right,
                        const GradedSpace& target, int conductor) {
    OpFamily ops;
    const Section* s = maybe(name);
    if (!s) return ops;
    for (const auto& l : s->lines) {
      Cursor c(source, l);
      std::int64_t n = c.integer();
      Index a = c.label(left, "the first slot");
      Index b = c.label(right, "the second slot");
      c.expect("->");
      SparseVector v = c.vector(target, conductor, "the target space");
      put(ops, n, a * right.dim() + b, left.dim() * right.dim(), target.dim(), std::move(v), c);
    }
    return ops;
  }

  /// "n a -> tensor-vec".
  OpFamily linear_ops(const std::string& name, const GradedSpace& source_space, const GradedSpace& target,
                      int conductor) {
    OpFamily ops;
    const Section* s = maybe(name);
    if (!s) return ops;
    for (const auto& l : s->lines) {
      Cursor c(source, l);
      std::int64_t n = c.integer();
      Index a = c.label(source_space, "the source space");
      c.expect("->");
      SparseVector v = c.vector(target, conductor, "the target space");
      put(ops, n, a, source_space.dim(), target.dim(), std::move(v), c);
    }
    return ops;
  }

  std::optional<LinearMap> endo(const std::string& name, const GradedSpace& space, int conductor) {
    const Section* s = maybe(name);
    if (!s) return std::nullopt;
    LinearMap f(space.dim(), space.dim());
    for (const auto& l : s->lines) {
      Cursor c(source, l);
      Index a = c.label(space, "[" + name + "]");
      c.expect("->");
      SparseVector v = c.vector(space, conductor, "[" + name + "]");
      if (!f.column(a).is_zero()) c.fail_at(0, "duplicate entry");
      f.set_column(a, std::move(v));
    }
    return f;
  }

  ParseResult run() {
    ParseResult out;
    const Line& kl = single_line("kind");
    Cursor kc(source, kl);
    std::size_t kstart = (kc.skip_ws(), kc.pos());
    std::string kind = kc.word();
    kc.expect_end();
    StructureKind k;
    try {
      k = kind_from_name(kind);
    } catch (const std::invalid_argument&) {
      kc.fail_at(kstart, "unknown kind '" + kind + "'", "algebra, coalgebra, module or comodule");
    }

    int conductor = 1;
    if (const Section* s = maybe("scalars")) {
      for (const auto& l : s->lines) {
        Cursor c(source, l);
        c.expect("conductor");
        std::size_t at = (c.skip_ws(), c.pos());
        std::int64_t n = c.integer();
        if (n < 1 || n > 10000) c.fail_at(at, "conductor out of range", "1..10000");
        conductor = static_cast<int>(n);
        c.expect_end();
      }
    }

    GroupSpec spec;
    GroupElement gamma0;
    bool have_gamma0 = false;
    {
      const Section& s = need("group");
      for (const auto& l : s.lines) {
        Cursor c(source, l);
        current_line = l.no;
        std::size_t at = (c.skip_ws(), c.pos());
        std::string key = c.word();
        if (key == "free_rank") {
          std::int64_t r = c.integer();
          if (r < 0 || r > 16) c.fail_at(at, "free rank out of range", "0..16");
          spec.free_rank = static_cast<int>(r);
        } else if (key == "torsion") {
          while (!c.eof()) {
            std::size_t p = (c.skip_ws(), c.pos());
            std::int64_t m = c.integer();
            if (m < 2) c.fail_at(p, "torsion order must be at least 2");
            spec.torsion.push_back(m);
          }
        } else if (key == "gamma0") {
          gamma0 = element(c, spec);
          have_gamma0 = true;
        } else {
          c.fail_at(at, "unknown group key '" + key + "'", "free_rank, torsion or gamma0");
        }
        c.expect_end();
      }
      if (!have_gamma0) gamma0 = GroupElement::zero(spec);
    }

    BetaSpec b = beta(spec, conductor);
    SpacePtr v = space("space", spec);
    Window w = window("window");
    const bool algebra_side = k == StructureKind::Algebra || k == StructureKind::Module;

    std::shared_ptr<const VertexAlgebraData> alg;
    std::shared_ptr<const VertexCoalgebraData> coalg;
    if (algebra_side) {
      forbid("coY", "algebra-side");
      forbid("covacuum", "algebra-side");
      VertexAlgebraData a;
      a.space = v;
      a.gamma0 = gamma0;
      a.beta = b;
      a.window = w;
      a.vacuum = vec_section("vacuum", *v, conductor);
      a.ops = bilinear_ops("Y", *v, *v, *v, conductor);
      alg = std::make_shared<const VertexAlgebraData>(std::move(a));
    } else {
      forbid("Y", "coalgebra-side");
      forbid("vacuum", "coalgebra-side");
      VertexCoalgebraData a;
      a.space = v;
      a.gamma0 = gamma0;
      a.beta = b;
      a.window = w;
      a.covacuum = vec_section("covacuum", *v, conductor);
      a.coops = linear_ops("coY", *v, tensor(*v, *v), conductor);
      coalg = std::make_shared<const VertexCoalgebraData>(std::move(a));
    }

    if (k == StructureKind::Algebra || k == StructureKind::Coalgebra) {
      for (const char* n : {"mspace", "mwindow", "YM", "coYM", "DM", "coDM", "omega", "rho"}) forbid(n, kind);
    }
    if (k == StructureKind::Module) {
      for (const char* n : {"coYM", "coDM", "rho"}) forbid(n, kind);
      ModuleData m;
      m.algebra = alg;
      m.mspace = space("mspace", spec);
      m.window = window("mwindow");
      m.mops = bilinear_ops("YM", *v, *m.mspace, *m.mspace, conductor);
      m.d_m = endo("DM", *m.mspace, conductor);
      if (maybe("omega")) m.omega = vec_section("omega", *v, conductor);
      out.structure = Structure::of(std::move(m));
    } else if (k == StructureKind::Comodule) {
      for (const char* n : {"YM", "DM", "omega"}) forbid(n, kind);
      ComoduleData m;
      m.coalgebra = coalg;
      m.mspace = space("mspace", spec);
      m.window = window("mwindow");
      m.comops = linear_ops("coYM", *m.mspace, tensor(*m.mspace, *v), conductor);
      m.cod_m = endo("coDM", *m.mspace, conductor);
      if (maybe("rho")) m.rho = vec_section("rho", *v, conductor);
      out.structure = Structure::of(std::move(m));
    } else if (k == StructureKind::Algebra) {
      out.structure = Structure::of(*alg);
    } else {
      out.structure = Structure::of(*coalg);
    }
    out.structure.conductor = std::lcm(out.structure.conductor, conductor);
    out.warnings = warnings;
    return out;
  }
};

// ---------------------------------------------------------------- serialization

std::string scalar_text(const Scalar& s) { return s.is_rational() ? s.str() : "(" + s.str() + ")"; }

std::string beta_text(const BetaSpec& b) {
  switch (b.kind()) {
    case BetaSpec::Kind::One:
    case BetaSpec::Kind::Zero:
    case BetaSpec::Kind::SignBilinear:
    case BetaSpec::Kind::QBilinear:
      return b.describe();
    case BetaSpec::Kind::Table: {
      std::string out = "table";
      for (const auto& [k, v] : b.entries()) out += "\n" + k.first.str() + " " + k.second.str() + " -> " + scalar_text(v);
      return out;
    }
    case BetaSpec::Kind::Product: {
      std::string out = "product";
      for (const auto& f : b.factors()) {
        if (f.kind() == BetaSpec::Kind::Table || f.kind() == BetaSpec::Kind::Product) {
          throw std::invalid_argument("nested table or product beta cannot be written");
        }
        out += "\n" + beta_text(f);
      }
      return out;
    }
  }
  return "one";
}

void write_space(std::ostream& out, const GradedSpace& v) {
  for (Index i = 0; i < v.dim();) {
    out << v.degree(i).str();
    Index j = i;
    for (; j < v.dim() && v.degree(j) == v.degree(i); ++j) out << " " << v.label(j);
    out << "\n";
    i = j;
  }
}

void write_bilinear(std::ostream& out, const OpFamily& ops, const GradedSpace& left, const GradedSpace& right,
                    const GradedSpace& target) {
  for (const auto& [n, f] : ops) {
    for (Index col = 0; col < f.source_dim(); ++col) {
      const auto& v = f.column(col);
      if (v.is_zero()) continue;
      out << n << " " << left.label(col / right.dim()) << " " << right.label(col % right.dim()) << " -> "
          << target.render(v) << "\n";
    }
  }
}

void write_linear(std::ostream& out, const OpFamily& ops, const GradedSpace& src, const GradedSpace& target) {
  for (const auto& [n, f] : ops) {
    for (Index col = 0; col < f.source_dim(); ++col) {
      const auto& v = f.column(col);
      if (v.is_zero()) continue;
      out << n << " " << src.label(col) << " -> " << target.render(v) << "\n";
    }
  }
}

void write_endo(std::ostream& out, const LinearMap& f, const GradedSpace& space) {
  for (Index col = 0; col < f.source_dim(); ++col) {
    const auto& v = f.column(col);
    if (v.is_zero()) continue;
    out << space.label(col) << " -> " << space.render(v) << "\n";
  }
}

}  // namespace

ParseResult parse_structure(std::string_view text, const std::string& source) {
  Parser p;
  p.source = source;
  p.split(text);
  return p.run();
}

SparseVector parse_vector(std::string_view text, const GradedSpace& space, int conductor) {
  Line line{1, std::string(text)};
  const std::string source = "<vector>";
  Cursor c(source, line);
  return c.vector(space, conductor, "the space");
}

ParseResult load_structure(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_structure(buf.str(), path);
}

std::string serialize(const Structure& s) {
  std::ostringstream out;
  const bool algebra_side = s.kind == StructureKind::Algebra || s.kind == StructureKind::Module;
  const GradedSpace& v = algebra_side ? *s.algebra->space : *s.coalgebra->space;
  const GroupSpec& spec = v.spec();
  const GroupElement& g0 = algebra_side ? s.algebra->gamma0 : s.coalgebra->gamma0;
  const BetaSpec& beta = algebra_side ? s.algebra->beta : s.coalgebra->beta;
  const Window& w = algebra_side ? s.algebra->window : s.coalgebra->window;
  out << "[kind]\n" << kind_name(s.kind) << "\n";
  out << "[scalars]\nconductor " << s.conductor << "\n";
  out << "[group]\nfree_rank " << spec.free_rank << "\n";
  if (!spec.torsion.empty()) {
    out << "torsion";
    for (auto m : spec.torsion) out << " " << m;
    out << "\n";
  }
  out << "gamma0 " << g0.str() << "\n";
  out << "[beta]\n" << beta_text(beta) << "\n";
  out << "[space]\n";
  write_space(out, v);
  out << "[window]\n" << w.lo << " " << w.hi << "\n";
  if (algebra_side) {
    out << "[vacuum]\n" << v.render(s.algebra->vacuum) << "\n";
    out << "[Y]\n";
    write_bilinear(out, s.algebra->ops, v, v, v);
  } else {
    out << "[covacuum]\n" << v.render(s.coalgebra->covacuum) << "\n";
    out << "[coY]\n";
    write_linear(out, s.coalgebra->coops, v, tensor(v, v));
  }
  if (s.kind == StructureKind::Module) {
    const auto& m = *s.module;
    out << "[mspace]\n";
    write_space(out, *m.mspace);
    out << "[mwindow]\n" << m.window.lo << " " << m.window.hi << "\n";
    out << "[YM]\n";
    write_bilinear(out, m.mops, v, *m.mspace, *m.mspace);
    if (m.d_m) {
      out << "[DM]\n";
      write_endo(out, *m.d_m, *m.mspace);
    }
    if (m.omega) out << "[omega]\n" << v.render(*m.omega) << "\n";
  } else if (s.kind == StructureKind::Comodule) {
    const auto& m = *s.comodule;
    out << "[mspace]\n";
    write_space(out, *m.mspace);
    out << "[mwindow]\n" << m.window.lo << " " << m.window.hi << "\n";
    out << "[coYM]\n";
    write_linear(out, m.comops, *m.mspace, tensor(*m.mspace, v));
    if (m.cod_m) {
      out << "[coDM]\n";
      write_endo(out, *m.cod_m, *m.mspace);
    }
    if (m.rho) out << "[rho]\n" << v.render(*m.rho) << "\n";
  }
  return out.str();
}

void save_structure(const Structure& s, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << serialize(s);
  if (!out) throw IoError("write failed for '" + path + "'");
}

std::string structure_digest(const Structure& s) { return digest_hex(serialize(s)); }

}  // namespace vakit
