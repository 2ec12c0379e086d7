#include "charsum/groups.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>
#include <sstream>

namespace charsum {

namespace {

std::string strip(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

int parse_number(const std::string& s) {
  try {
    size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw parse_error("expected a number, got '" + s + "'");
    return v;
  } catch (const std::out_of_range&) {
    throw parse_error("number out of range: '" + s + "'");
  } catch (const std::invalid_argument&) {
    throw parse_error("expected a number, got '" + s + "'");
  }
}

}  // namespace

Permutation::Permutation(std::vector<uint8_t> mapping) : map_(std::move(mapping)) {
  if (map_.empty() || map_.size() > 255)
    throw input_error("permutation degree out of range");
  std::vector<bool> seen(map_.size(), false);
  for (uint8_t img : map_) {
    if (img >= map_.size() || seen[img])
      throw input_error("mapping is not a bijection");
    seen[img] = true;
  }
}

Permutation Permutation::identity(int degree) {
  std::vector<uint8_t> m(degree);
  for (int i = 0; i < degree; ++i) m[i] = static_cast<uint8_t>(i);
  return Permutation(std::move(m));
}

Permutation Permutation::operator*(const Permutation& o) const {
  if (degree() != o.degree())
    throw input_error("permutation degree mismatch: " + std::to_string(degree()) +
                      " vs " + std::to_string(o.degree()));
  std::vector<uint8_t> m(map_.size());
  for (size_t i = 0; i < map_.size(); ++i) m[i] = o.map_[map_[i]];
  return Permutation(std::move(m));
}

std::string Permutation::to_cycles() const {
  std::string out;
  std::vector<bool> done(map_.size(), false);
  for (size_t start = 0; start < map_.size(); ++start) {
    if (done[start] || map_[start] == start) continue;
    out += "(";
    size_t p = start;
    bool first = true;
    while (!done[p]) {
      done[p] = true;
      if (!first) out += " ";
      out += std::to_string(p + 1);
      first = false;
      p = map_[p];
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

Permutation Permutation::parse_cycles(const std::string& text, int degree) {
  if (degree < 1 || degree > 255) throw input_error("degree out of range");
  std::vector<uint8_t> m(degree);
  for (int i = 0; i < degree; ++i) m[i] = static_cast<uint8_t>(i);
  std::string body = strip(text);
  if (body == "1" || body == "()" || body.empty()) return Permutation(std::move(m));
  size_t pos = 0;
  std::vector<bool> moved(degree, false);
  while (pos < body.size()) {
    if (std::isspace(static_cast<unsigned char>(body[pos]))) {
      ++pos;
      continue;
    }
    if (body[pos] != '(') throw parse_error("expected '(' in cycles '" + text + "'");
    size_t close = body.find(')', pos);
    if (close == std::string::npos) throw parse_error("unbalanced cycle in '" + text + "'");
    std::istringstream cyc(body.substr(pos + 1, close - pos - 1));
    std::vector<int> pts;
    std::string tok;
    while (cyc >> tok) {
      int v = parse_number(tok);
      if (v < 1 || v > degree)
        throw parse_error("point " + std::to_string(v) + " out of range");
      if (moved[v - 1]) throw parse_error("point repeated across cycles");
      moved[v - 1] = true;
      pts.push_back(v - 1);
    }
    for (size_t k = 0; k + 1 < pts.size(); ++k) m[pts[k]] = static_cast<uint8_t>(pts[k + 1]);
    if (pts.size() > 1) m[pts.back()] = static_cast<uint8_t>(pts.front());
    pos = close + 1;
  }
  return Permutation(std::move(m));
}

G72Generators g72_generators() {
  auto build = [](auto&& f) {
    std::vector<uint8_t> m(9);
    for (int u = 0; u < 3; ++u)
      for (int v = 0; v < 3; ++v) {
        auto [nu, nv] = f(u, v);
        m[3 * u + v] = static_cast<uint8_t>(3 * nu + nv);
      }
    return Permutation(std::move(m));
  };
  return G72Generators{
      build([](int u, int v) { return std::pair{(u + 1) % 3, v}; }),
      build([](int u, int v) { return std::pair{u, (v + 1) % 3}; }),
      build([](int u, int v) { return std::pair{v, u}; }),
      build([](int u, int v) { return std::pair{(3 - u) % 3, v}; }),
      build([](int u, int v) { return std::pair{u, (3 - v) % 3}; }),
  };
}

Permutation g72_word(const std::string& word) {
  G72Generators g = g72_generators();
  Permutation acc = Permutation::identity(9);
  std::string body = strip(word);
  if (body == "1" || body.empty()) return acc;
  for (char c : body) {
    switch (c) {
      case 'a': acc = acc * g.a; break;
      case 'b': acc = acc * g.b; break;
      case 'c': acc = acc * g.c; break;
      case 'd': acc = acc * g.d; break;
      case 'e': acc = acc * g.e; break;
      default:
        throw parse_error(std::string("unknown generator '") + c + "' in word");
    }
  }
  return acc;
}

std::vector<Permutation> closure(const std::vector<Permutation>& generators) {
  if (generators.empty()) return {};
  int degree = generators.front().degree();
  for (const auto& g : generators)
    if (g.degree() != degree) throw input_error("generator degree mismatch");
  std::set<Permutation> seen;
  std::deque<Permutation> todo;
  Permutation id = Permutation::identity(degree);
  seen.insert(id);
  todo.push_back(id);
  while (!todo.empty()) {
    Permutation cur = todo.front();
    todo.pop_front();
    for (const auto& g : generators) {
      Permutation next = cur * g;
      if (seen.insert(next).second) todo.push_back(next);
    }
  }
  return {seen.begin(), seen.end()};
}

ProgramResult eval_program(const Program& p, const std::vector<int>& input) {
  int degree = 0;
  if (!p.instructions.empty())
    degree = p.instructions.front().on_zero.degree();
  else if (!p.accepting.empty())
    degree = p.accepting.front().degree();
  else
    degree = 1;
  Permutation acc = Permutation::identity(degree);
  for (const auto& ins : p.instructions) {
    if (ins.bit < 0 || ins.bit >= static_cast<int>(input.size()))
      throw input_error("instruction reads bit " + std::to_string(ins.bit + 1) +
                        " beyond input width " + std::to_string(input.size()));
    acc = acc * (input[ins.bit] ? ins.on_one : ins.on_zero);
  }
  bool accepted = std::find(p.accepting.begin(), p.accepting.end(), acc) !=
                  p.accepting.end();
  return {acc, accepted};
}

Program parse_program(const std::string& text,
                      const std::function<Permutation(const std::string&)>& word_parser) {
  Program p;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = strip(line);
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("accept=", 0) == 0) {
      p.accepting.push_back(word_parser(strip(line.substr(7))));
      continue;
    }
    // "bit=<k> zero=<word> one=<word>"; words may contain spaces (cycles)
    size_t zpos = line.find(" zero=");
    size_t opos = line.find(" one=");
    if (line.rfind("bit=", 0) != 0 || zpos == std::string::npos ||
        opos == std::string::npos || opos < zpos)
      throw parse_error("bad instruction line '" + line + "'");
    int bit = parse_number(strip(line.substr(4, zpos - 4)));
    std::string zero_word = strip(line.substr(zpos + 6, opos - (zpos + 6)));
    std::string one_word = strip(line.substr(opos + 5));
    if (bit < 1 || zero_word.empty() || one_word.empty())
      throw parse_error("bad instruction line '" + line + "'");
    p.instructions.push_back({bit - 1, word_parser(zero_word), word_parser(one_word)});
  }
  return p;
}

std::string program_to_string(const Program& p) {
  std::ostringstream out;
  for (const auto& ins : p.instructions)
    out << "bit=" << ins.bit + 1 << " zero=" << ins.on_zero.to_cycles()
        << " one=" << ins.on_one.to_cycles() << "\n";
  for (const auto& acc : p.accepting) out << "accept=" << acc.to_cycles() << "\n";
  return out.str();
}

}  // namespace charsum
