#include "cosetra/ra_io.hpp"

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

}  // namespace

StructurePtr parse_ra(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;

  int n = -1;
  std::vector<std::string> names;
  std::vector<int> converse;
  bool have_converse = false;
  Mask identity = 0;
  bool have_identity = false;
  std::vector<Mask> comp;

  auto need_atoms = [&](int at_line) {
    if (n < 0) throw ParseError(origin, at_line, "'atoms <n>' must come first");
  };
  auto atom_index = [&](const std::string& tok, int at_line) {
    int v = parse_int(tok, origin, at_line);
    if (v < 0 || v >= n)
      throw ParseError(origin, at_line,
                       "atom index " + std::to_string(v) + " out of range 0.." +
                           std::to_string(n - 1));
    return v;
  };

  while (std::getline(in, line)) {
    ++lineno;
    auto tok = tokenize(line);
    if (tok.empty()) continue;
    const std::string& key = tok[0];
    if (key == "atoms") {
      if (n >= 0) throw ParseError(origin, lineno, "duplicate 'atoms' line");
      if (tok.size() != 2) throw ParseError(origin, lineno, "usage: atoms <n>");
      n = parse_int(tok[1], origin, lineno);
      if (n <= 0 || n > kMaxAtoms)
        throw ParseError(origin, lineno,
                         "atom count must be in 1.." + std::to_string(kMaxAtoms));
      names.clear();
      for (int i = 0; i < n; ++i) names.push_back("a" + std::to_string(i));
      converse.assign(n, 0);
      comp.assign(static_cast<std::size_t>(n) * n, 0);
    } else if (key == "names") {
      need_atoms(lineno);
      if (static_cast<int>(tok.size()) != n + 1)
        throw ParseError(origin, lineno,
                         "expected " + std::to_string(n) + " names");
      names.assign(tok.begin() + 1, tok.end());
    } else if (key == "converse") {
      need_atoms(lineno);
      if (static_cast<int>(tok.size()) != n + 1)
        throw ParseError(origin, lineno,
                         "expected " + std::to_string(n) + " converse images");
      for (int i = 0; i < n; ++i) converse[i] = atom_index(tok[i + 1], lineno);
      have_converse = true;
    } else if (key == "identity") {
      need_atoms(lineno);
      if (tok.size() < 2)
        throw ParseError(origin, lineno, "identity line needs at least one atom");
      for (std::size_t t = 1; t < tok.size(); ++t)
        identity |= bit(atom_index(tok[t], lineno));
      have_identity = true;
    } else if (key == "cycle") {
      need_atoms(lineno);
      if (tok.size() != 4)
        throw ParseError(origin, lineno, "usage: cycle <i> <j> <k>");
      const int i = atom_index(tok[1], lineno);
      const int j = atom_index(tok[2], lineno);
      const int k = atom_index(tok[3], lineno);
      comp[static_cast<std::size_t>(i) * n + j] |= bit(k);
    } else {
      throw ParseError(origin, lineno, "unknown directive '" + key + "'");
    }
  }
  if (n < 0) throw ParseError(origin, lineno, "missing 'atoms <n>' line");
  if (!have_converse) throw ParseError(origin, lineno, "missing 'converse' line");
  if (!have_identity) throw ParseError(origin, lineno, "missing 'identity' line");

  try {
    return AtomStructure::make(std::move(names), std::move(converse), identity,
                               std::move(comp));
  } catch (const ValidationError& e) {
    throw ParseError(origin, lineno, e.what());
  }
}

StructurePtr load_ra(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ParseError(file.string(), 0, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_ra(buf.str(), file.string());
}

std::string render_ra(const AtomStructure& a, const std::string& comment) {
  std::ostringstream out;
  if (!comment.empty()) out << "# " << comment << "\n";
  const int n = a.atom_count();
  out << "atoms " << n << "\n";
  out << "names";
  for (int i = 0; i < n; ++i) out << " " << a.atom_name(i);
  out << "\nconverse";
  for (int i = 0; i < n; ++i) out << " " << a.converse_atom(i);
  out << "\nidentity";
  for (int i : bits(a.identity_atoms())) out << " " << i;
  out << "\n";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k : bits(a.composition_atoms(i, j)))
        out << "cycle " << i << " " << j << " " << k << "\n";
  return out.str();
}

void save_ra(const AtomStructure& a, const std::filesystem::path& file,
             const std::string& comment) {
  std::ofstream out(file);
  if (!out) throw Error("cannot write " + file.string());
  out << render_ra(a, comment);
}

std::uint64_t file_digest(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error("cannot open " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string s = buf.str();
  return fnv1a64(s.data(), s.size());
}

}  // namespace cosetra
