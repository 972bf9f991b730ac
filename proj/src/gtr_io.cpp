#include "cosetra/gtr_io.hpp"

#include <fstream>
#include <sstream>

namespace cosetra {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) {
    if (tok[0] == '#') break;
    out.push_back(tok);
  }
  return out;
}

int parse_int(const std::string& tok, const std::string& origin, int line) {
  try {
    std::size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(origin, line, "expected an integer, got '" + tok + "'");
  }
}

// Recursive-descent group constructor: cyclic n | symmetric n |
// product <c1> <c2> | grp <path>.
GroupPtr parse_constructor(const std::vector<std::string>& tok, std::size_t& pos,
                           const std::string& origin, int line,
                           const std::filesystem::path& base_dir) {
  if (pos >= tok.size())
    throw ParseError(origin, line, "truncated group constructor");
  const std::string head = tok[pos++];
  if (head == "cyclic") {
    if (pos >= tok.size()) throw ParseError(origin, line, "cyclic needs an order");
    return FiniteGroup::cyclic(parse_int(tok[pos++], origin, line));
  }
  if (head == "symmetric") {
    if (pos >= tok.size())
      throw ParseError(origin, line, "symmetric needs a point count");
    return FiniteGroup::symmetric(parse_int(tok[pos++], origin, line));
  }
  if (head == "product") {
    GroupPtr a = parse_constructor(tok, pos, origin, line, base_dir);
    GroupPtr b = parse_constructor(tok, pos, origin, line, base_dir);
    return FiniteGroup::direct_product(a, b);
  }
  if (head == "grp") {
    if (pos >= tok.size()) throw ParseError(origin, line, "grp needs a path");
    return load_grp(base_dir / tok[pos++]);
  }
  if (head == "table") {
    if (pos >= tok.size()) throw ParseError(origin, line, "table needs an order");
    const int m = parse_int(tok[pos++], origin, line);
    if (m <= 0 || m > kMaxAtoms)
      throw ParseError(origin, line, "table order out of range");
    if (tok.size() - pos < static_cast<std::size_t>(m) * m)
      throw ParseError(origin, line, "table needs " + std::to_string(m * m) +
                                         " entries");
    std::vector<std::vector<int>> t(m, std::vector<int>(m));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) t[i][j] = parse_int(tok[pos++], origin, line);
    try {
      return FiniteGroup::from_table(t);
    } catch (const ValidationError& e) {
      throw ParseError(origin, line, e.what());
    }
  }
  throw ParseError(origin, line, "unknown group constructor '" + head + "'");
}

}  // namespace

GroupPtr load_grp(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ParseError(file.string(), 0, "cannot open file");
  std::string line;
  int lineno = 0;
  int order = -1;
  std::vector<std::string> labels;
  std::vector<std::vector<int>> table;
  while (std::getline(in, line)) {
    ++lineno;
    auto tok = tokenize(line);
    if (tok.empty()) continue;
    if (tok[0] == "order") {
      if (tok.size() != 2) throw ParseError(file.string(), lineno, "usage: order <m>");
      order = parse_int(tok[1], file.string(), lineno);
    } else if (tok[0] == "labels") {
      labels.assign(tok.begin() + 1, tok.end());
    } else {
      if (order < 0)
        throw ParseError(file.string(), lineno, "'order <m>' must come first");
      std::vector<int> row;
      for (const auto& t : tok) row.push_back(parse_int(t, file.string(), lineno));
      if (static_cast<int>(row.size()) != order)
        throw ParseError(file.string(), lineno, "table row of wrong width");
      table.push_back(std::move(row));
    }
  }
  if (order < 0 || static_cast<int>(table.size()) != order)
    throw ParseError(file.string(), lineno, "table has the wrong number of rows");
  try {
    return FiniteGroup::from_table(table, std::move(labels));
  } catch (const ValidationError& e) {
    throw ParseError(file.string(), lineno, e.what());
  }
}

std::string render_grp(const FiniteGroup& g) {
  std::ostringstream out;
  out << "order " << g.order() << "\nlabels";
  for (int i = 0; i < g.order(); ++i) out << " " << g.label(i);
  out << "\n";
  for (int i = 0; i < g.order(); ++i) {
    for (int j = 0; j < g.order(); ++j) out << (j ? " " : "") << g.mul(i, j);
    out << "\n";
  }
  return out.str();
}

GroupTriple parse_gtr(const std::string& text, const std::string& origin,
                      const std::filesystem::path& base_dir) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;

  int k = -1;
  GroupTriple f;
  struct RawPair {
    int line = 0;
    Mask h = 0, kk = 0;
    bool have_h = false, have_k = false;
    std::vector<std::pair<int, int>> phi;
  };
  std::map<std::pair<int, int>, RawPair> raw;
  std::map<std::tuple<int, int, int>, std::pair<int, int>> raw_c;  // -> (rep, line)
  std::vector<int> klass;

  auto index_check = [&](int v, int at_line) {
    if (k < 0) throw ParseError(origin, at_line, "'indices <k>' must come first");
    if (v < 0 || v >= k)
      throw ParseError(origin, at_line, "index " + std::to_string(v) + " out of range");
    return v;
  };

  while (std::getline(in, line)) {
    ++lineno;
    auto tok = tokenize(line);
    if (tok.empty()) continue;
    const std::string& key = tok[0];
    if (key == "indices") {
      if (tok.size() != 2) throw ParseError(origin, lineno, "usage: indices <k>");
      k = parse_int(tok[1], origin, lineno);
      if (k <= 0 || k > kMaxAtoms)
        throw ParseError(origin, lineno, "index count out of range");
      f.groups.assign(k, nullptr);
      f.related.assign(k, std::vector<bool>(k, false));
      klass.assign(k, -1);
    } else if (key == "group") {
      if (tok.size() < 3) throw ParseError(origin, lineno, "usage: group <x> <constructor>");
      const int x = index_check(parse_int(tok[1], origin, lineno), lineno);
      std::size_t pos = 2;
      f.groups[x] = parse_constructor(tok, pos, origin, lineno, base_dir);
      if (pos != tok.size())
        throw ParseError(origin, lineno, "trailing tokens after group constructor");
    } else if (key == "eclass") {
      if (tok.size() < 2) throw ParseError(origin, lineno, "empty eclass line");
      std::vector<int> members;
      for (std::size_t t = 1; t < tok.size(); ++t)
        members.push_back(index_check(parse_int(tok[t], origin, lineno), lineno));
      for (int x : members) {
        if (klass[x] >= 0)
          throw ParseError(origin, lineno, "index " + std::to_string(x) +
                                               " listed in two classes");
        klass[x] = static_cast<int>(members.front());
      }
      for (int x : members)
        for (int y : members) f.related[x][y] = true;
    } else if (key == "H" || key == "K") {
      if (tok.size() < 4)
        throw ParseError(origin, lineno, "usage: " + key + " <x> <y> <members...>");
      const int x = index_check(parse_int(tok[1], origin, lineno), lineno);
      const int y = index_check(parse_int(tok[2], origin, lineno), lineno);
      Mask m = 0;
      for (std::size_t t = 3; t < tok.size(); ++t)
        m |= bit(parse_int(tok[t], origin, lineno));
      auto& rp = raw[{x, y}];
      rp.line = lineno;
      if (key == "H") {
        rp.h = m;
        rp.have_h = true;
      } else {
        rp.kk = m;
        rp.have_k = true;
      }
    } else if (key == "phi") {
      if (tok.size() < 4)
        throw ParseError(origin, lineno, "usage: phi <x> <y> <a:b ...>");
      const int x = index_check(parse_int(tok[1], origin, lineno), lineno);
      const int y = index_check(parse_int(tok[2], origin, lineno), lineno);
      auto& rp = raw[{x, y}];
      rp.line = lineno;
      for (std::size_t t = 3; t < tok.size(); ++t) {
        const auto colon = tok[t].find(':');
        if (colon == std::string::npos)
          throw ParseError(origin, lineno, "phi entries look like <src>:<dst>");
        rp.phi.emplace_back(
            parse_int(tok[t].substr(0, colon), origin, lineno),
            parse_int(tok[t].substr(colon + 1), origin, lineno));
      }
    } else if (key == "C") {
      if (tok.size() != 5)
        throw ParseError(origin, lineno, "usage: C <x> <y> <z> <representative>");
      const int x = index_check(parse_int(tok[1], origin, lineno), lineno);
      const int y = index_check(parse_int(tok[2], origin, lineno), lineno);
      const int z = index_check(parse_int(tok[3], origin, lineno), lineno);
      raw_c[{x, y, z}] = {parse_int(tok[4], origin, lineno), lineno};
    } else {
      throw ParseError(origin, lineno, "unknown directive '" + key + "'");
    }
  }
  if (k < 0) throw ParseError(origin, lineno, "missing 'indices <k>' line");
  for (int x = 0; x < k; ++x) {
    if (!f.groups[x])
      throw ParseError(origin, lineno, "no group for index " + std::to_string(x));
    if (klass[x] < 0)
      throw ParseError(origin, lineno, "index " + std::to_string(x) +
                                           " missing from the eclass lines");
  }

  f.pairs.assign(k, std::vector<TriplePairData>(k));
  for (int x = 0; x < k; ++x) {
    TriplePairData pd;
    pd.h = Subgroup{f.groups[x], bit(f.groups[x]->identity())};
    pd.k = pd.h;
    pd.h_cosets = coset_system(pd.h, Side::Left).cosets;
    pd.k_cosets = pd.h_cosets;
    f.pairs[x][x] = pd;
  }
  std::vector<std::vector<bool>> have(k, std::vector<bool>(k, false));
  for (int x = 0; x < k; ++x) have[x][x] = true;
  for (auto& [xy, rp] : raw) {
    auto [x, y] = xy;
    if (x == y)
      throw ParseError(origin, rp.line, "diagonal pairs are implicit");
    if (!f.related[x][y])
      throw ParseError(origin, rp.line, "pair is not in the equivalence");
    if (!rp.have_h || !rp.have_k || rp.phi.empty())
      throw ParseError(origin, rp.line, "pair needs H, K and phi lines");
    try {
      QuotientIso phi = quotient_iso(subgroup_of(f.groups[x], rp.h),
                                     subgroup_of(f.groups[y], rp.kk), rp.phi);
      TriplePairData pd;
      pd.h = phi.source_subgroup();
      pd.k = phi.target_subgroup();
      pd.h_cosets = phi.source_system().cosets;
      pd.k_cosets = phi.target_system().cosets;
      f.pairs[x][y] = pd;
      have[x][y] = true;
    } catch (const Error& e) {
      throw ParseError(origin, rp.line, e.what());
    }
  }
  // Mirror pairs by the converse convention when absent.
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y) {
      if (!f.related[x][y] || have[x][y] || !have[y][x]) continue;
      const auto& fwd = f.pairs[y][x];
      TriplePairData rev;
      rev.h = fwd.k;
      rev.k = fwd.h;
      rev.h_cosets = fwd.k_cosets;
      rev.k_cosets = fwd.h_cosets;
      f.pairs[x][y] = rev;
      have[x][y] = true;
    }
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y)
      if (f.related[x][y] && !have[x][y])
        throw ParseError(origin, lineno, "pair (" + std::to_string(x) + "," +
                                             std::to_string(y) + ") has no data");

  for (auto [x, y, z] : f.e3_triples())
    f.shifting[{x, y, z}] = f.product_subgroup_mask(x, y, z);
  for (auto& [xyz, rep_line] : raw_c) {
    auto [x, y, z] = xyz;
    if (!f.in_e3(x, y, z))
      throw ParseError(origin, rep_line.second, "triple is not in E_3");
    const Mask m = f.product_subgroup_mask(x, y, z);
    if (rep_line.first < 0 || rep_line.first >= f.groups[x]->order())
      throw ParseError(origin, rep_line.second, "representative out of range");
    f.shifting[{x, y, z}] = coset_of(*f.groups[x], m, rep_line.first, Side::Left);
  }
  return f;
}

GroupTriple load_gtr(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ParseError(file.string(), 0, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_gtr(buf.str(), file.string(), file.parent_path());
}

namespace {

std::string constructor_of(const GroupPtr& g) {
  // Emitted groups are reproduced as explicit tables only when they match no
  // constructor; recognizing cyclic groups covers the common cases.
  const int n = g->order();
  auto cyc = FiniteGroup::cyclic(n);
  if (g->same_table(*cyc)) return "cyclic " + std::to_string(n);
  if (n == 6 && g->same_table(*FiniteGroup::symmetric(3))) return "symmetric 3";
  if (n == 24 && g->same_table(*FiniteGroup::symmetric(4))) return "symmetric 4";
  for (int d = 2; d < n; ++d) {
    if (n % d) continue;
    auto prod = FiniteGroup::direct_product(FiniteGroup::cyclic(d),
                                            FiniteGroup::cyclic(n / d));
    if (g->same_table(*prod))
      return "product cyclic " + std::to_string(d) + " cyclic " +
             std::to_string(n / d);
    auto prod22 = d == 4 && n % 4 == 0
                      ? FiniteGroup::direct_product(
                            FiniteGroup::direct_product(FiniteGroup::cyclic(2),
                                                        FiniteGroup::cyclic(2)),
                            FiniteGroup::cyclic(n / 4))
                      : nullptr;
    if (prod22 && g->same_table(*prod22))
      return "product product cyclic 2 cyclic 2 cyclic " + std::to_string(n / 4);
  }
  return "";
}

}  // namespace

std::string render_gtr(const GroupTriple& f, const std::string& comment) {
  std::ostringstream out;
  if (!comment.empty()) out << "# " << comment << "\n";
  const int k = f.count();
  out << "indices " << k << "\n";
  for (int x = 0; x < k; ++x) {
    std::string ctor = constructor_of(f.groups[x]);
    if (ctor.empty()) {
      const auto& g = *f.groups[x];
      ctor = "table " + std::to_string(g.order());
      for (int i = 0; i < g.order(); ++i)
        for (int j = 0; j < g.order(); ++j)
          ctor += " " + std::to_string(g.mul(i, j));
    }
    out << "group " << x << " " << ctor << "\n";
  }
  std::vector<bool> seen(k, false);
  for (int x = 0; x < k; ++x) {
    if (seen[x]) continue;
    out << "eclass";
    for (int y = 0; y < k; ++y)
      if (f.related[x][y]) {
        out << " " << y;
        seen[y] = true;
      }
    out << "\n";
  }
  for (int x = 0; x < k; ++x)
    for (int y = x + 1; y < k; ++y) {
      if (!f.in_e(x, y)) continue;
      const auto& pd = f.pair(x, y);
      out << "H " << x << " " << y;
      for (int m : bits(pd.h.members)) out << " " << m;
      out << "\nK " << x << " " << y;
      for (int m : bits(pd.k.members)) out << " " << m;
      out << "\nphi " << x << " " << y;
      for (int i = 0; i < pd.kappa(); ++i)
        out << " " << lowest_bit(pd.h_cosets[i]) << ":" << lowest_bit(pd.k_cosets[i]);
      out << "\n";
    }
  for (auto [x, y, z] : f.e3_triples()) {
    const Mask c = f.shifting_coset(x, y, z);
    if (c != f.product_subgroup_mask(x, y, z))
      out << "C " << x << " " << y << " " << z << " " << lowest_bit(c) << "\n";
  }
  return out.str();
}

void save_gtr(const GroupTriple& f, const std::filesystem::path& file,
              const std::string& comment) {
  std::ofstream out(file);
  if (!out) throw Error("cannot write " + file.string());
  out << render_gtr(f, comment);
}

}  // namespace cosetra
