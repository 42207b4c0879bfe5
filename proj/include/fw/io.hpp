#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fw/etree.hpp"
#include "fw/field.hpp"
#include "fw/linkedness.hpp"
#include "fw/measure.hpp"
#include "fw/poset.hpp"
#include "fw/rational.hpp"

// Line-oriented plain-text document formats. '#' starts a comment; blank
// lines are ignored. All rationals are written "p/q".

namespace fw {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace iodetail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) { out.push_back(cur); cur.clear(); }
    else cur += c;
  }
  out.push_back(cur);
  return out;
}

inline std::vector<std::vector<std::string>> tokenize(const std::string& text) {
  std::vector<std::vector<std::string>> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    if (!toks.empty()) lines.push_back(std::move(toks));
  }
  return lines;
}

inline Rational need_rational(const std::string& s) {
  auto r = parse_rational(s);
  if (!r) throw ParseError("bad rational: " + s);
  return *r;
}

}  // namespace iodetail

// ---- POSET: "elem a" / "le a b" (a stronger than b) ----

inline FinitePoset parse_poset(const std::string& text) {
  std::vector<std::string> elems;
  std::vector<std::pair<std::string, std::string>> le;
  for (const auto& toks : iodetail::tokenize(text)) {
    if (toks[0] == "elem" && toks.size() == 2) elems.push_back(toks[1]);
    else if (toks[0] == "le" && toks.size() == 3) le.emplace_back(toks[1], toks[2]);
    else throw ParseError("bad poset line: " + toks[0]);
  }
  std::vector<std::pair<int, int>> pairs;
  auto find = [&](const std::string& l) {
    for (size_t i = 0; i < elems.size(); ++i)
      if (elems[i] == l) return static_cast<int>(i);
    throw ParseError("le references unknown element: " + l);
  };
  for (const auto& [a, b] : le) pairs.emplace_back(find(a), find(b));
  return FinitePoset(elems, pairs);
}

inline std::string serialize_poset(const FinitePoset& P) {
  std::ostringstream out;
  for (int i = 0; i < P.size(); ++i) out << "elem " << P.label(i) << "\n";
  for (int i = 0; i < P.size(); ++i)
    for (int j = 0; j < P.size(); ++j)
      if (i != j && P.leq(i, j))
        out << "le " << P.label(i) << " " << P.label(j) << "\n";
  return out.str();
}

// ---- FIELD: "ground 0..n" / "set NAME a,b,c" (closure applied on load) ----

inline FieldOfSets parse_field(const std::string& text) {
  int ground = -1;
  std::vector<FieldOfSets::Mask> gens;
  for (const auto& toks : iodetail::tokenize(text)) {
    if (toks[0] == "ground" && toks.size() == 2) {
      const std::string& g = toks[1];
      auto dots = g.find("..");
      ground = dots == std::string::npos
                   ? std::stoi(g)
                   : std::stoi(g.substr(dots + 2)) + 1;
    } else if (toks[0] == "set" && toks.size() >= 2) {
      FieldOfSets::Mask m = 0;
      if (toks.size() == 3 && toks[2] != "-")
        for (const auto& x : iodetail::split(toks[2], ','))
          m |= FieldOfSets::Mask{1} << std::stoi(x);
      gens.push_back(m);
    } else {
      throw ParseError("bad field line: " + toks[0]);
    }
  }
  if (ground < 1) throw ParseError("field needs a ground line");
  return make_field(ground, gens);
}

inline std::string serialize_field(const FieldOfSets& B) {
  std::ostringstream out;
  out << "ground 0.." << B.ground_size() - 1 << "\n";
  int i = 0;
  for (auto m : B.members())
    out << "set s" << i++ << " "
        << (m == 0 ? "-" : FieldOfSets::mask_label(m)) << "\n";
  return out.str();
}

// ---- MEASURE: "atomweight a p/q", atoms labeled by their ground points ----

inline Fam parse_measure(const std::string& text, const FieldOfSets& B) {
  std::map<FieldOfSets::Mask, Rational> w;
  for (const auto& toks : iodetail::tokenize(text)) {
    if (toks[0] != "atomweight" || toks.size() != 3)
      throw ParseError("bad measure line");
    FieldOfSets::Mask m = 0;
    for (const auto& x : iodetail::split(toks[1], ','))
      m |= FieldOfSets::Mask{1} << std::stoi(x);
    w[m] = iodetail::need_rational(toks[2]);
  }
  return Fam(B, std::move(w));
}

inline std::string serialize_measure(const Fam& m) {
  std::ostringstream out;
  for (const auto& [a, w] : m.atom_weights())
    out << "atomweight " << FieldOfSets::mask_label(a) << " "
        << rational_str(w) << "\n";
  return out.str();
}

// ---- FAMILY: "cell idx eps elem,elem,..." ----

struct FamilyDoc {
  struct Cell {
    std::string index;
    Rational eps;
    std::vector<std::string> elems;
  };
  std::vector<Cell> cells;

  bool operator==(const FamilyDoc& o) const {
    if (cells.size() != o.cells.size()) return false;
    for (size_t i = 0; i < cells.size(); ++i)
      if (cells[i].index != o.cells[i].index ||
          cells[i].eps != o.cells[i].eps || cells[i].elems != o.cells[i].elems)
        return false;
    return true;
  }
};

inline FamilyDoc parse_family(const std::string& text) {
  FamilyDoc doc;
  for (const auto& toks : iodetail::tokenize(text)) {
    if (toks[0] != "cell" || toks.size() < 3 || toks.size() > 4)
      throw ParseError("bad family line");
    FamilyDoc::Cell c;
    c.index = toks[1];
    c.eps = iodetail::need_rational(toks[2]);
    if (toks.size() == 4 && toks[3] != "-")
      c.elems = iodetail::split(toks[3], ',');
    doc.cells.push_back(std::move(c));
  }
  return doc;
}

inline std::string serialize_family(const FamilyDoc& doc) {
  std::ostringstream out;
  for (const auto& c : doc.cells) {
    out << "cell " << c.index << " " << rational_str(c.eps) << " ";
    if (c.elems.empty()) out << "-";
    else
      for (size_t i = 0; i < c.elems.size(); ++i)
        out << (i ? "," : "") << c.elems[i];
    out << "\n";
  }
  return out.str();
}

/// Binds a family document to a poset by element label.
inline LinkedFamily<FinitePoset> bind_family(const FamilyDoc& doc,
                                             const FinitePoset& P) {
  LinkedFamily<FinitePoset> F;
  for (const auto& c : doc.cells) {
    int idx = -1;
    for (size_t i = 0; i < F.index_labels.size(); ++i)
      if (F.index_labels[i] == c.index) idx = static_cast<int>(i);
    if (idx < 0) {
      idx = static_cast<int>(F.index_labels.size());
      F.index_labels.push_back(c.index);
    }
    int ei = -1;
    for (size_t i = 0; i < F.eps_grid.size(); ++i)
      if (F.eps_grid[i] == c.eps) ei = static_cast<int>(i);
    if (ei < 0) {
      ei = static_cast<int>(F.eps_grid.size());
      F.eps_grid.push_back(c.eps);
    }
    std::vector<int> cell;
    for (const auto& l : c.elems) cell.push_back(P.index_of(l));
    F.cells[{idx, ei}] = std::move(cell);
  }
  std::sort(F.eps_grid.begin(), F.eps_grid.end());
  // Re-key cells against the sorted grid.
  LinkedFamily<FinitePoset> out;
  out.index_labels = F.index_labels;
  out.eps_grid = F.eps_grid;
  for (const auto& c : doc.cells) {
    int idx = 0, ei = 0;
    for (size_t i = 0; i < out.index_labels.size(); ++i)
      if (out.index_labels[i] == c.index) idx = static_cast<int>(i);
    for (size_t i = 0; i < out.eps_grid.size(); ++i)
      if (out.eps_grid[i] == c.eps) ei = static_cast<int>(i);
    std::vector<int> cell;
    for (const auto& l : c.elems) cell.push_back(P.index_of(l));
    out.cells[{idx, ei}] = std::move(cell);
  }
  return out;
}

// ---- PROFILE: "profile paper" or "level h M=<int> a=<int>" ----

inline GrowthProfile parse_profile_lines(
    const std::vector<std::vector<std::string>>& lines) {
  std::map<int, LevelData> levels;
  for (const auto& toks : lines) {
    if (toks[0] == "profile" && toks.size() == 2 && toks[1] == "paper")
      return GrowthProfile::paper();
    if (toks[0] != "level" || toks.size() != 4)
      throw ParseError("bad profile line");
    int h = std::stoi(toks[1]);
    LevelData d;
    for (size_t i = 2; i < 4; ++i) {
      if (toks[i].rfind("M=", 0) == 0) d.M = BigInt(toks[i].substr(2));
      else if (toks[i].rfind("a=", 0) == 0) d.a = BigInt(toks[i].substr(2));
      else throw ParseError("bad profile field: " + toks[i]);
    }
    levels[h] = d;
  }
  std::vector<LevelData> v;
  for (int h = 0; h < static_cast<int>(levels.size()); ++h) {
    auto it = levels.find(h);
    if (it == levels.end()) throw ParseError("profile levels must be contiguous");
    v.push_back(it->second);
  }
  return GrowthProfile::custom(std::move(v));
}

inline GrowthProfile parse_profile(const std::string& text) {
  return parse_profile_lines(iodetail::tokenize(text));
}

inline std::string serialize_profile(const GrowthProfile& pr) {
  if (pr.kind() == GrowthProfile::Kind::PAPER) return "profile paper\n";
  std::ostringstream out;
  for (int h = 0; pr.supports(h); ++h)
    out << "level " << h << " M=" << pr.branching(h).get_str()
        << " a=" << pr.norm_base(h).get_str() << "\n";
  return out.str();
}

// ---- CONDITION: profile lines + "trunk i/j/k" + "frontier d" +
//      "node i/j keep=explicit:0,1,2" / "node i/j keep=cofinite:excl=5,7" ----

inline NodePath parse_path(const std::string& s) {
  NodePath p;
  if (s == "-") return p;
  for (const auto& x : iodetail::split(s, '/')) p.push_back(BigInt(x));
  return p;
}

inline std::string path_str(const NodePath& p) {
  if (p.empty()) return "-";
  std::string s;
  for (size_t i = 0; i < p.size(); ++i)
    s += (i ? "/" : "") + p[i].get_str();
  return s;
}

inline ECondition parse_condition(const std::string& text) {
  std::vector<std::vector<std::string>> profile_lines;
  ECondition c;
  bool have_frontier = false;
  for (const auto& toks : iodetail::tokenize(text)) {
    if (toks[0] == "profile" || toks[0] == "level") {
      profile_lines.push_back(toks);
    } else if (toks[0] == "trunk" && toks.size() == 2) {
      c.trunk = parse_path(toks[1]);
    } else if (toks[0] == "frontier" && toks.size() == 2) {
      c.frontier_depth = std::stoi(toks[1]);
      have_frontier = true;
    } else if (toks[0] == "node" && toks.size() == 3) {
      NodePath p = parse_path(toks[1]);
      const std::string& spec = toks[2];
      if (spec.rfind("keep=explicit:", 0) == 0) {
        std::vector<BigInt> kept;
        std::string list = spec.substr(14);
        if (!list.empty())
          for (const auto& x : iodetail::split(list, ',')) kept.push_back(BigInt(x));
        c.branches[p] = SuccessorSet::explicit_set(std::move(kept));
      } else if (spec.rfind("keep=cofinite:excl=", 0) == 0) {
        std::vector<BigInt> excl;
        std::string list = spec.substr(19);
        if (!list.empty())
          for (const auto& x : iodetail::split(list, ',')) excl.push_back(BigInt(x));
        // Total filled in after the profile is known.
        c.branches[p] = SuccessorSet::cofinite(BigInt(1) << 62, std::move(excl));
      } else {
        throw ParseError("bad keep spec: " + spec);
      }
    } else {
      throw ParseError("bad condition line: " + toks[0]);
    }
  }
  if (profile_lines.empty()) throw ParseError("condition needs a profile");
  c.profile = parse_profile_lines(profile_lines);
  for (auto& [path, succ] : c.branches)
    if (succ.mode == SuccessorSet::Mode::COFINITE)
      succ.total = c.profile.branching(static_cast<int>(path.size()));
  if (!have_frontier) {
    size_t deepest = c.trunk.size();
    for (const auto& [path, succ] : c.branches)
      deepest = std::max(deepest, path.size() + 1);
    c.frontier_depth = static_cast<int>(deepest);
  }
  validate_structure(c);
  return c;
}

inline std::string serialize_condition(const ECondition& c) {
  std::ostringstream out;
  out << serialize_profile(c.profile);
  out << "trunk " << path_str(c.trunk) << "\n";
  out << "frontier " << c.frontier_depth << "\n";
  for (const auto& [path, succ] : c.branches) {
    out << "node " << path_str(path) << " keep=";
    if (succ.mode == SuccessorSet::Mode::EXPLICIT) {
      out << "explicit:";
      for (size_t i = 0; i < succ.children.size(); ++i)
        out << (i ? "," : "") << succ.children[i].get_str();
    } else {
      out << "cofinite:excl=";
      for (size_t i = 0; i < succ.children.size(); ++i)
        out << (i ? "," : "") << succ.children[i].get_str();
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace fw
