#include "charsum/circuits.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace charsum {

namespace {

struct topology_error : input_error {
  explicit topology_error(const std::string& what) : input_error(what) {}
};

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

void Circuit::check_wire(int w) const {
  if (w < 0 || w >= size())
    throw input_error("wire references undefined gate g" + std::to_string(w));
}

int Circuit::add_input(int var) {
  if (var < 0 || var >= kMaxVars) throw input_error("input variable out of range");
  gates_.push_back({GateKind::Input, var, {}});
  return size() - 1;
}

int Circuit::add_const(int bit) {
  if (bit != 0 && bit != 1) throw input_error("constant gate must hold 0 or 1");
  gates_.push_back({GateKind::Const, bit, {}});
  return size() - 1;
}

int Circuit::add_gate(GateKind kind, std::vector<int> wires) {
  if (kind == GateKind::Input || kind == GateKind::Const)
    throw input_error("use add_input/add_const for source gates");
  for (int w : wires) check_wire(w);
  if (kind == GateKind::And2 && wires.size() != 2)
    throw input_error("AND2 takes exactly two wires");
  gates_.push_back({kind, 0, std::move(wires)});
  return size() - 1;
}

void Circuit::set_output(int gate) {
  check_wire(gate);
  output_ = gate;
}

int Circuit::logic_gate_count() const {
  int c = 0;
  for (const auto& g : gates_)
    if (g.kind != GateKind::Input && g.kind != GateKind::Const) ++c;
  return c;
}

int Circuit::max_input_var() const {
  int m = -1;
  for (const auto& g : gates_)
    if (g.kind == GateKind::Input) m = std::max(m, g.payload);
  return m;
}

int Circuit::depth() const {
  std::vector<int> d(size(), 0);
  int best = 0;
  for (int i = 0; i < size(); ++i) {
    for (int w : gates_[i].wires) d[i] = std::max(d[i], d[w] + 1);
    best = std::max(best, d[i]);
  }
  return best;
}

int Circuit::evaluate(uint64_t x) const {
  if (output_ < 0) throw input_error("circuit has no output gate");
  std::vector<uint8_t> v(size(), 0);
  for (int i = 0; i < size(); ++i) {
    const Gate& g = gates_[i];
    switch (g.kind) {
      case GateKind::Input:
        v[i] = (x >> g.payload) & 1u;
        break;
      case GateKind::Const:
        v[i] = static_cast<uint8_t>(g.payload);
        break;
      case GateKind::And2:
        v[i] = v[g.wires[0]] & v[g.wires[1]];
        break;
      case GateKind::Mod2:
      case GateKind::Mod3: {
        unsigned sum = 0;
        for (int w : g.wires) sum += v[w];
        unsigned m = g.kind == GateKind::Mod2 ? 2 : 3;
        v[i] = sum % m == 0 ? 1 : 0;
        break;
      }
    }
  }
  return v[output_];
}

std::string Circuit::to_netlist() const {
  std::ostringstream out;
  for (int i = 0; i < size(); ++i) {
    const Gate& g = gates_[i];
    out << "g" << i << " = ";
    switch (g.kind) {
      case GateKind::Input:
        out << "INPUT(" << g.payload + 1 << ")";
        break;
      case GateKind::Const:
        out << "CONST(" << g.payload << ")";
        break;
      case GateKind::Mod2:
      case GateKind::Mod3:
      case GateKind::And2: {
        out << (g.kind == GateKind::Mod2   ? "MOD2"
                : g.kind == GateKind::Mod3 ? "MOD3"
                                           : "AND2");
        out << "(";
        for (size_t k = 0; k < g.wires.size(); ++k) {
          if (k) out << ",";
          out << "g" << g.wires[k];
        }
        out << ")";
        break;
      }
    }
    out << "\n";
  }
  out << "output g" << output_ << "\n";
  return out.str();
}

Circuit Circuit::parse_netlist(const std::string& text) {
  Circuit c;
  std::istringstream in(text);
  std::string line;
  bool have_output = false;
  auto parse_gate_ref = [&c](const std::string& tok) {
    if (tok.size() < 2 || tok[0] != 'g')
      throw parse_error("expected gate reference, got '" + tok + "'");
    int idx = parse_number(tok.substr(1));
    c.check_wire(idx);
    return idx;
  };
  while (std::getline(in, line)) {
    line = strip(line);
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("output", 0) == 0) {
      c.set_output(parse_gate_ref(strip(line.substr(6))));
      have_output = true;
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos || line[0] != 'g')
      throw parse_error("bad netlist line '" + line + "'");
    int idx = parse_number(strip(line.substr(1, eq - 1)));
    if (idx != c.size())
      throw parse_error("gates must be declared in index order, got g" +
                        std::to_string(idx));
    std::string rhs = strip(line.substr(eq + 1));
    size_t open = rhs.find('(');
    size_t close = rhs.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
      throw parse_error("bad gate expression '" + rhs + "'");
    std::string kind = strip(rhs.substr(0, open));
    std::string args = rhs.substr(open + 1, close - open - 1);
    std::vector<std::string> toks;
    size_t pos = 0;
    while (pos <= args.size() && !strip(args).empty()) {
      size_t comma = args.find(',', pos);
      toks.push_back(strip(comma == std::string::npos ? args.substr(pos)
                                                      : args.substr(pos, comma - pos)));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (kind == "INPUT") {
      if (toks.size() != 1) throw parse_error("INPUT takes one variable index");
      int var = parse_number(toks[0]);
      if (var < 1) throw parse_error("INPUT variables are 1-based");
      c.add_input(var - 1);
    } else if (kind == "CONST") {
      if (toks.size() != 1) throw parse_error("CONST takes one bit");
      c.add_const(parse_number(toks[0]));
    } else if (kind == "MOD2" || kind == "MOD3" || kind == "AND2") {
      std::vector<int> wires;
      wires.reserve(toks.size());
      for (const auto& t : toks) wires.push_back(parse_gate_ref(t));
      c.add_gate(kind == "MOD2"   ? GateKind::Mod2
                 : kind == "MOD3" ? GateKind::Mod3
                                  : GateKind::And2,
                 std::move(wires));
    } else {
      throw parse_error("unknown gate kind '" + kind + "'");
    }
  }
  if (!have_output) throw parse_error("netlist is missing the output line");
  return c;
}

namespace {

/* Shared scaffolding for both converters: per character term, one MOD2
 * gate wired to the term's inputs plus CONST(1) for the form's constant
 * bit plus one flipping CONST(1), paired with an always-1 companion MOD2,
 * so the pair contributes 2^(term(x)) to the top MOD3's bit-sum. */
struct CircuitBuilder {
  Circuit c;
  std::map<int, int> input_gate;
  std::map<std::pair<int, int>, int> and_gate;
  int const_one = -1;

  int input(int var) {
    auto it = input_gate.find(var);
    if (it != input_gate.end()) return it->second;
    int g = c.add_input(var);
    input_gate[var] = g;
    return g;
  }
  int one() {
    if (const_one < 0) const_one = c.add_const(1);
    return const_one;
  }
  int pair(int i, int j) {
    auto key = std::make_pair(i, j);
    auto it = and_gate.find(key);
    if (it != and_gate.end()) return it->second;
    int g = c.add_gate(GateKind::And2, {input(i), input(j)});
    and_gate[key] = g;
    return g;
  }
};

Circuit build_circuit(const CharacterSum& s, bool allow_quadratic) {
  CircuitBuilder b;
  int n = s.n();
  std::vector<int> mod3_inputs;
  for (const auto& q : s.terms()) {
    std::vector<int> wires;
    if (!q.is_linear()) {
      if (!allow_quadratic)
        throw input_error("depth-2 conversion requires linear terms, got '" +
                          q.to_string() + "'");
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (q.quad(i, j)) wires.push_back(b.pair(i, j));
    }
    for (int i = 0; i < n; ++i)
      if (q.linear(i)) wires.push_back(b.input(i));
    if (q.constant_term()) wires.push_back(b.one());
    wires.push_back(b.one());  // flip, so the gate outputs the form's value
    int main_gate = b.c.add_gate(GateKind::Mod2, std::move(wires));
    int companion = b.c.add_gate(GateKind::Mod2, {b.one(), b.one()});
    mod3_inputs.push_back(main_gate);
    mod3_inputs.push_back(companion);
  }
  int top = b.c.add_gate(GateKind::Mod3, std::move(mod3_inputs));
  b.c.set_output(top);
  return b.c;
}

/* Shared inverse: each MOD2 gate's wire form w (inputs and constants,
 * multiplicities mod 2) contributes the character w + 1; padding the sum
 * with zero forms makes its zero set exactly the acceptance set. */
CharacterSum recover_sum(const Circuit& c, int n, bool allow_and) {
  if (c.output() < 0) throw topology_error("circuit has no output gate");
  const auto& gates = c.gates();
  const Gate& top = gates[c.output()];
  if (top.kind != GateKind::Mod3)
    throw topology_error("output gate must be MOD3");
  CharacterSum s(n);
  int mod2_count = 0;
  for (int w : top.wires) {
    const Gate& g = gates[w];
    if (g.kind != GateKind::Mod2)
      throw topology_error("MOD3 inputs must be MOD2 gates");
    ++mod2_count;
    QuadraticForm form(n);
    for (int in : g.wires) {
      const Gate& src = gates[in];
      switch (src.kind) {
        case GateKind::Input:
          if (src.payload >= n) throw input_error("input variable beyond n");
          form.set_linear(src.payload, !form.linear(src.payload));
          break;
        case GateKind::Const:
          if (src.payload == 1) form.set_constant_term(!form.constant_term());
          break;
        case GateKind::And2: {
          if (!allow_and)
            throw topology_error("AND2 gates need the depth-3 converter");
          const Gate& l = gates[src.wires[0]];
          const Gate& r = gates[src.wires[1]];
          if (l.kind != GateKind::Input || r.kind != GateKind::Input)
            throw topology_error("AND2 inputs must be INPUT gates");
          int i = l.payload, j = r.payload;
          if (i >= n || j >= n) throw input_error("input variable beyond n");
          if (i == j)
            form.set_linear(i, !form.linear(i));  // x*x = x
          else
            form.toggle_quad(std::min(i, j), std::max(i, j));
          break;
        }
        default:
          throw topology_error("MOD2 inputs must be INPUT, CONST or AND2 gates");
      }
    }
    form.set_constant_term(!form.constant_term());  // MOD2 outputs NOT parity
    s.add_term(form);
  }
  // the k zero-form characters that cancel the gates' 0/1 offset mod 3
  int k = (3 - mod2_count % 3) % 3;
  for (int i = 0; i < k; ++i) s.add_term(QuadraticForm(n));
  return s;
}

int infer_n(const Circuit& c) {
  int n = c.max_input_var() + 1;
  return n < 1 ? 1 : n;
}

}  // namespace

Circuit characters_to_depth2(const CharacterSum& s) { return build_circuit(s, false); }

Circuit characters_to_depth3(const CharacterSum& s) { return build_circuit(s, true); }

CharacterSum depth2_to_characters(const Circuit& c) {
  return recover_sum(c, infer_n(c), false);
}

CharacterSum depth3_to_characters(const Circuit& c) {
  return recover_sum(c, infer_n(c), true);
}

}  // namespace charsum
