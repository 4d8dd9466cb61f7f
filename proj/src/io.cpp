#include "sepcert/io.hpp"

#include <fstream>

namespace sepcert {

namespace {

int state_qubits(const json& j) {
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw InputError("state file needs an integer field 'n'");
  const int n = j["n"].get<int>();
  if (n < 1 || n > 10) throw InputError("qubit count out of range");
  return n;
}

}  // namespace

DensityMatrix state_from_json(const json& j) {
  const int n = state_qubits(j);
  const int dim = 1 << n;
  const std::string format = j.value("format", std::string("dense"));
  if (format == "dense") {
    if (!j.contains("dense") || !j["dense"].is_array())
      throw InputError("dense state needs a 'dense' array");
    const auto& rows = j["dense"];
    if (static_cast<int>(rows.size()) != dim * dim)
      throw InputError("dense state has the wrong number of entries");
    Mat m(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) {
        const auto& e = rows[static_cast<std::size_t>(r * dim + c)];
        if (!e.is_array() || e.size() != 2)
          throw InputError("dense entries must be [re, im] pairs");
        m(r, c) = cd(e[0].get<double>(), e[1].get<double>());
      }
    return DensityMatrix{n, std::move(m)};
  }
  if (format == "pauli") {
    if (!j.contains("pauli") || !j["pauli"].is_array())
      throw InputError("pauli state needs a 'pauli' array");
    CharTensor R = CharTensor::zero(n);
    for (const auto& t : j["pauli"]) {
      const PauliString s(t.at("string").get<std::string>());
      if (s.size() != static_cast<std::size_t>(n))
        throw InputError("pauli term length does not match n");
      R[s] = t.at("coeff").get<double>();
    }
    if (std::abs(R.values[0] - 1.0) > 1e-9)
      throw InputError("pauli state must carry identity coefficient 1");
    return density_from_char(R);
  }
  throw InputError("unknown state format '" + format + "'");
}

json state_to_json(const DensityMatrix& rho, const std::string& format) {
  json j;
  j["n"] = rho.n;
  j["format"] = format;
  if (format == "dense") {
    json rows = json::array();
    const int dim = 1 << rho.n;
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c)
        rows.push_back({rho.entries(r, c).real(), rho.entries(r, c).imag()});
    j["dense"] = std::move(rows);
  } else if (format == "pauli") {
    const CharTensor R = char_from_density(rho);
    json terms = json::array();
    for (std::size_t idx = 0; idx < R.values.size(); ++idx) {
      if (R.values[idx] == 0.0) continue;
      terms.push_back({{"string", PauliString::from_index(idx, rho.n).str()},
                       {"coeff", R.values[idx]}});
    }
    j["pauli"] = std::move(terms);
  } else {
    throw InputError("unknown state format '" + format + "'");
  }
  return j;
}

WitnessSpec witness_from_json(const json& j) {
  WitnessSpec w;
  w.n = state_qubits(j);
  if (!j.contains("terms") || !j["terms"].is_array())
    throw InputError("witness file needs a 'terms' array");
  for (const auto& t : j["terms"]) {
    const PauliString s(t.at("string").get<std::string>());
    if (s.size() != static_cast<std::size_t>(w.n))
      throw InputError("witness term length does not match n");
    w.set(s, t.at("coeff").get<double>());
  }
  if (j.contains("constant") && !j["constant"].is_null())
    w.constant = j["constant"].get<double>();
  return w;
}

json witness_to_json(const WitnessSpec& w) {
  json j;
  j["n"] = w.n;
  json terms = json::array();
  for (const auto& [s, c] : w.terms) terms.push_back({{"string", s.str()}, {"coeff", c}});
  j["terms"] = std::move(terms);
  if (w.constant)
    j["constant"] = *w.constant;
  else
    j["constant"] = nullptr;
  return j;
}

Partition partition_from_json(int n, const json& blocks) {
  if (!blocks.is_array() || blocks.empty()) throw InputError("partition must be a block array");
  std::vector<std::vector<int>> parsed;
  for (const auto& b : blocks) {
    const std::string s = b.get<std::string>();
    std::vector<int> block;
    for (char ch : s) {
      if (ch < '1' || ch > '9') throw InputError("partition blocks are strings of qubit digits");
      block.push_back(ch - '0');
    }
    parsed.push_back(std::move(block));
  }
  return Partition(n, parsed);
}

json partition_to_json(const Partition& p) {
  json blocks = json::array();
  for (const auto& b : p.blocks) {
    std::string s;
    for (int q : b) s += static_cast<char>('0' + q);
    blocks.push_back(s);
  }
  return blocks;
}

SeparabilityClass class_from_name(int n, const std::string& name) {
  if (name == "full") return SeparabilityClass::full_split(n);
  if (name == "tri") return SeparabilityClass::tri(n);
  if (name == "bi") return SeparabilityClass::bi(n);
  throw InputError("unknown class shorthand '" + name + "'");
}

SeparabilityClass class_from_json(const json& j) {
  const int n = state_qubits(j);
  if (j.contains("partitions") && j["partitions"].is_string())
    return class_from_name(n, j["partitions"].get<std::string>());
  if (!j.contains("partitions") || !j["partitions"].is_array())
    throw InputError("class file needs 'partitions'");
  SeparabilityClass cls;
  cls.n = n;
  for (const auto& p : j["partitions"]) cls.partitions.push_back(partition_from_json(n, p));
  if (cls.partitions.empty()) throw InputError("class file lists no partitions");
  return cls;
}

XState xstate_from_json(const json& j) {
  if (!j.contains("diag") || !j["diag"].is_array() || j["diag"].size() != 8)
    throw InputError("X-state file needs a 'diag' array of 8 reals");
  if (!j.contains("anti") || !j["anti"].is_array() || j["anti"].size() != 4)
    throw InputError("X-state file needs an 'anti' array of 4 reals");
  XState x;
  for (int i = 0; i < 8; ++i) x.diag[static_cast<std::size_t>(i)] = j["diag"][static_cast<std::size_t>(i)].get<double>();
  for (int k = 0; k < 4; ++k) x.anti[static_cast<std::size_t>(k)] = j["anti"][static_cast<std::size_t>(k)].get<double>();
  return x;
}

json xstate_to_json(const XState& x) {
  json j;
  j["diag"] = x.diag;
  j["anti"] = x.anti;
  return j;
}

StabilizerSet stabilizers_from_json(const json& j) {
  const int n = state_qubits(j);
  if (!j.contains("generators") || !j["generators"].is_array())
    throw InputError("stabilizer file needs a 'generators' array");
  StabilizerSet s;
  for (const auto& g : j["generators"]) {
    const int sign = g.at("sign").get<int>();
    if (sign != 1 && sign != -1) throw InputError("stabilizer signs must be +/-1");
    const PauliString str(g.at("string").get<std::string>());
    if (str.size() != static_cast<std::size_t>(n))
      throw InputError("stabilizer length does not match n");
    s.generators.push_back({sign, str});
  }
  return s;
}

SeparableDecomposition decomposition_from_json(int n, const json& j) {
  if (!j.contains("components") || !j["components"].is_array())
    throw InputError("decomposition file needs a 'components' array");
  SeparableDecomposition d;
  for (const auto& c : j["components"]) {
    DecompComponent comp;
    comp.weight = c.at("weight").get<double>();
    comp.partition = partition_from_json(n, c.at("partition"));
    const auto& factors = c.at("factors");
    if (!factors.is_array() || factors.size() != comp.partition.blocks.size())
      throw InputError("component needs one factor per partition block");
    for (std::size_t b = 0; b < factors.size(); ++b) {
      const DensityMatrix rho = state_from_json(factors[b]);
      if (static_cast<std::size_t>(rho.n) != comp.partition.blocks[b].size())
        throw InputError("factor size does not match its block");
      comp.factors.push_back({comp.partition.blocks[b], rho});
    }
    d.components.push_back(std::move(comp));
  }
  return d;
}

json decomposition_to_json(const SeparableDecomposition& d) {
  json comps = json::array();
  for (const auto& c : d.components) {
    json jc;
    jc["weight"] = c.weight;
    jc["partition"] = partition_to_json(c.partition);
    json factors = json::array();
    for (const auto& f : c.factors) factors.push_back(state_to_json(f.state));
    jc["factors"] = std::move(factors);
    comps.push_back(std::move(jc));
  }
  return json{{"components", comps}};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in '" + path + "': " + e.what());
  }
  return j;
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

}  // namespace sepcert
