#include "liecf/types.hpp"

#include <sstream>

namespace liecf {

void SimpleType::validate() const {
  bool ok = false;
  switch (family) {
    case Family::A: ok = rank >= 1; break;
    case Family::B: ok = rank >= 2; break;
    case Family::C: ok = rank >= 2; break;
    case Family::D: ok = rank >= 3; break;
    case Family::E: ok = rank >= 6 && rank <= 8; break;
    case Family::F: ok = rank == 4; break;
    case Family::G: ok = rank == 2; break;
  }
  if (!ok)
    throw input_error("invalid rank " + std::to_string(rank) + " for family " +
                      std::string(1, static_cast<char>(family)));
}

std::string SimpleType::name() const {
  return std::string(1, static_cast<char>(family)) + std::to_string(rank);
}

SimpleType parse_simple_type(const std::string& s) {
  if (s.size() < 2) throw input_error("bad simple type: " + s);
  char f = s[0];
  if (f < 'A' || f > 'G' || f == 'E' + 100) throw input_error("bad family: " + s);
  int rank = 0;
  try {
    rank = std::stoi(s.substr(1));
  } catch (...) {
    throw input_error("bad rank in type: " + s);
  }
  return SimpleType(static_cast<Family>(f), rank);
}

void GroupShape::validate() const {
  if (components.empty()) throw input_error("empty component list");
  if (characteristic != 0 && !is_prime(characteristic))
    throw input_error("characteristic must be 0 or prime");
}

int GroupShape::total_rank() const {
  int r = 0;
  for (const auto& c : components) r += c.rank;
  return r;
}

std::string GroupShape::name() const {
  std::string s;
  for (const auto& c : components) s += c.name();
  return s;
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::string weight_to_string(const Weight& w, const GroupShape& g) {
  std::string out;
  size_t pos = 0;
  for (size_t ci = 0; ci < g.components.size(); ++ci) {
    if (ci) out += ',';
    int r = g.components[ci].rank;
    bool multi = false;
    for (int i = 0; i < r; ++i)
      if (w[pos + i] > 9 || w[pos + i] < 0) multi = true;
    if (multi) {
      out += '(';
      for (int i = 0; i < r; ++i) {
        if (i) out += ',';
        out += std::to_string(w[pos + i]);
      }
      out += ')';
    } else {
      for (int i = 0; i < r; ++i) out += static_cast<char>('0' + w[pos + i]);
    }
    pos += r;
  }
  return out;
}

std::string weight_to_string(const Weight& w) {
  bool multi = false;
  for (int x : w)
    if (x > 9 || x < 0) multi = true;
  std::string out;
  if (multi) {
    out += '(';
    for (size_t i = 0; i < w.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(w[i]);
    }
    out += ')';
  } else {
    for (int x : w) out += static_cast<char>('0' + x);
  }
  return out;
}

namespace {

// One component: either a run of digits or "(n,n,...)".
std::vector<int> parse_component(const std::string& s, size_t& i) {
  std::vector<int> out;
  if (i < s.size() && s[i] == '(') {
    ++i;
    while (i < s.size() && s[i] != ')') {
      size_t j = i;
      while (j < s.size() && (s[j] == '-' || std::isdigit(static_cast<unsigned char>(s[j])))) ++j;
      if (j == i) throw input_error("malformed weight string: " + s);
      out.push_back(std::stoi(s.substr(i, j - i)));
      i = j;
      if (i < s.size() && s[i] == ',') ++i;
    }
    if (i == s.size()) throw input_error("unterminated '(' in weight string: " + s);
    ++i;
  } else {
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      out.push_back(s[i] - '0');
      ++i;
    }
  }
  return out;
}

}  // namespace

Weight parse_weight(const std::string& s, const GroupShape& g) {
  Weight w;
  size_t i = 0;
  for (size_t ci = 0; ci < g.components.size(); ++ci) {
    if (ci) {
      if (i >= s.size() || s[i] != ',')
        throw input_error("expected ',' between components in weight: " + s);
      ++i;
    }
    auto part = parse_component(s, i);
    if (static_cast<int>(part.size()) != g.components[ci].rank)
      throw input_error("weight '" + s + "' has wrong length for " + g.name());
    w.insert(w.end(), part.begin(), part.end());
  }
  if (i != s.size()) throw input_error("trailing characters in weight: " + s);
  return w;
}

std::string group_to_string(const GroupShape& g) { return g.name(); }

GroupShape parse_group(const std::string& s, int p) {
  std::vector<SimpleType> comps;
  size_t i = 0;
  while (i < s.size()) {
    char f = s[i];
    if (f < 'A' || f > 'G') throw input_error("unknown group: " + s);
    size_t j = i + 1;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i + 1) throw input_error("missing rank in group: " + s);
    comps.push_back(parse_simple_type(s.substr(i, j - i)));
    i = j;
    if (i < s.size() && (s[i] == 'x' || s[i] == '*')) ++i;
  }
  if (comps.empty()) throw input_error("unknown group: " + s);
  return GroupShape(std::move(comps), p);
}

}  // namespace liecf
