#include "sbls/instance_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "json.hpp"

namespace sbls {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& category, const std::string& detail) {
  throw InstanceFormatError(category + ": " + detail);
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* name : allowed) known = known || item.key() == name;
    if (!known) fail("unknown field", "'" + where + item.key() + "'");
  }
}

const json& require_field(const json& obj, const char* name, const std::string& where) {
  const auto it = obj.find(name);
  if (it == obj.end()) fail("invalid field", "missing '" + where + name + "'");
  return *it;
}

int positive_int(const json& v, const std::string& name) {
  if (!v.is_number_integer() || v.get<long long>() < 1 || v.get<long long>() > 1'000'000) {
    fail("invalid field", "'" + name + "' must be a positive integer");
  }
  return static_cast<int>(v.get<long long>());
}

double real(const json& v, const std::string& name) {
  if (!v.is_number()) fail("invalid field", "'" + name + "' must be a number");
  const double out = v.get<double>();
  if (!std::isfinite(out)) fail("invalid field", "'" + name + "' must be finite");
  return out;
}

Vec real_vector(const json& v, const std::string& name) {
  if (!v.is_array()) fail("invalid field", "'" + name + "' must be an array");
  Vec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[static_cast<Eigen::Index>(i)] = real(v[i], name + "[" + std::to_string(i) + "]");
  }
  return out;
}

Tensor3 parse_tensor(const json& t, int l, int m, int n) {
  if (!t.is_object()) fail("invalid field", "'tensor' must be an object");
  reject_unknown(t, {"dense", "coo"}, "tensor.");
  const bool has_dense = t.contains("dense");
  const bool has_coo = t.contains("coo");
  if (has_dense == has_coo) fail("invalid field", "'tensor' needs exactly one of 'dense' or 'coo'");

  const std::size_t total = static_cast<std::size_t>(l) * m * n;
  if (has_dense) {
    const Vec data = real_vector(t["dense"], "tensor.dense");
    if (static_cast<std::size_t>(data.size()) != total) {
      fail("dimension mismatch", "tensor.dense has " + std::to_string(data.size()) +
                                     " entries but l*m*n = " + std::to_string(total));
    }
    return Tensor3(l, m, n, std::vector<double>(data.data(), data.data() + data.size()));
  }

  const json& coo = t["coo"];
  if (!coo.is_array()) fail("invalid field", "'tensor.coo' must be an array");
  Tensor3 out(l, m, n);
  std::set<std::tuple<int, int, int>> seen;
  for (std::size_t e = 0; e < coo.size(); ++e) {
    const json& entry = coo[e];
    const std::string name = "tensor.coo[" + std::to_string(e) + "]";
    if (!entry.is_array() || entry.size() != 4) fail("invalid field", name + " must be [i, j, k, value]");
    int idx[3];
    const int bounds[3] = {l, m, n};
    for (int d = 0; d < 3; ++d) {
      if (!entry[d].is_number_integer()) fail("invalid field", name + " indices must be integers");
      const long long v = entry[d].get<long long>();
      if (v < 1 || v > bounds[d]) {
        fail("index out of range", name + " index " + std::to_string(d + 1) + " is " +
                                       std::to_string(v) + ", allowed 1.." + std::to_string(bounds[d]));
      }
      idx[d] = static_cast<int>(v) - 1;
    }
    if (!seen.emplace(idx[0], idx[1], idx[2]).second) {
      fail("duplicate COO entry", "(" + std::to_string(idx[0] + 1) + "," + std::to_string(idx[1] + 1) +
                                      "," + std::to_string(idx[2] + 1) + ") appears twice");
    }
    out(idx[0], idx[1], idx[2]) = real(entry[3], name + " value");
  }
  return out;
}

json vector_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

}  // namespace

InstanceFile parse_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail("malformed JSON", e.what());
  }
  if (!doc.is_object()) fail("malformed JSON", "top level must be an object");
  reject_unknown(doc, {"schema_version", "dims", "sparsity", "tensor", "b", "known_point", "label"}, "");

  const json& version = require_field(doc, "schema_version", "");
  if (!version.is_number_integer() || version.get<long long>() != kSchemaVersion) {
    fail("invalid field", "'schema_version' must be " + std::to_string(kSchemaVersion));
  }

  const json& dims = require_field(doc, "dims", "");
  if (!dims.is_object()) fail("invalid field", "'dims' must be an object");
  reject_unknown(dims, {"l", "m", "n"}, "dims.");
  const int l = positive_int(require_field(dims, "l", "dims."), "dims.l");
  const int m = positive_int(require_field(dims, "m", "dims."), "dims.m");
  const int n = positive_int(require_field(dims, "n", "dims."), "dims.n");

  const json& sparsity = require_field(doc, "sparsity", "");
  if (!sparsity.is_object()) fail("invalid field", "'sparsity' must be an object");
  reject_unknown(sparsity, {"s", "t"}, "sparsity.");
  const int s = positive_int(require_field(sparsity, "s", "sparsity."), "sparsity.s");
  const int t = positive_int(require_field(sparsity, "t", "sparsity."), "sparsity.t");
  if (s >= m) fail("dimension mismatch", "sparsity s = " + std::to_string(s) + " must be below m = " + std::to_string(m));
  if (t >= n) fail("dimension mismatch", "sparsity t = " + std::to_string(t) + " must be below n = " + std::to_string(n));

  Tensor3 tensor = parse_tensor(require_field(doc, "tensor", ""), l, m, n);
  Vec b = real_vector(require_field(doc, "b", ""), "b");
  if (b.size() != l) {
    fail("dimension mismatch", "b has " + std::to_string(b.size()) + " entries but l = " + std::to_string(l));
  }

  InstanceFile file{Instance{std::move(tensor), std::move(b), s, t}, std::nullopt, std::nullopt};
  if (doc.contains("known_point")) {
    const Vec z = real_vector(doc["known_point"], "known_point");
    if (z.size() != m + n) {
      fail("dimension mismatch", "known_point has " + std::to_string(z.size()) +
                                     " entries but m + n = " + std::to_string(m + n));
    }
    file.known_point = Point::from_concatenated(z, m);
  }
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) fail("invalid field", "'label' must be a string");
    file.label = doc["label"].get<std::string>();
  }
  return file;
}

std::string serialize_instance(const InstanceFile& file) {
  const Instance& inst = file.instance;
  const Tensor3& a = inst.tensor;
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["dims"] = {{"l", a.l()}, {"m", a.m()}, {"n", a.n()}};
  doc["sparsity"] = {{"s", inst.s}, {"t", inst.t}};

  bool signed_zero = false;
  for (double v : a.data()) signed_zero = signed_zero || (v == 0.0 && std::signbit(v));
  const bool sparse = !signed_zero && 3 * a.nonzeros() <= 2 * a.size();
  if (sparse) {
    json coo = json::array();
    for (int i = 0; i < a.l(); ++i) {
      for (int j = 0; j < a.m(); ++j) {
        for (int k = 0; k < a.n(); ++k) {
          if (a(i, j, k) != 0.0) coo.push_back(json::array({i + 1, j + 1, k + 1, a(i, j, k)}));
        }
      }
    }
    doc["tensor"] = {{"coo", coo}};
  } else {
    doc["tensor"] = {{"dense", a.data()}};
  }
  doc["b"] = vector_json(inst.b);
  if (file.known_point) doc["known_point"] = vector_json(file.known_point->concatenated());
  if (file.label) doc["label"] = *file.label;
  return doc.dump(2) + "\n";
}

InstanceFile load_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open instance file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

void save_instance_file(const std::string& path, const InstanceFile& file) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write instance file '" + path + "'");
  out << serialize_instance(file);
}

}  // namespace sbls
