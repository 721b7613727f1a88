#include "csframe/json_io.hpp"

#include <fstream>
#include <sstream>

namespace csframe {

namespace {

Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError("complex number must be a [re, im] pair, got " + j.dump());
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw ParseError(std::string("expected an object with key '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing key '") + key + "'");
  return *it;
}

const Json& array_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_array()) throw ParseError(std::string("key '") + key + "' must be an array");
  return v;
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw ParseError(std::string("key '") + key + "' must be an integer");
  return v.get<int>();
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("matrix must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows > 0 && j[0].is_array() ? static_cast<Eigen::Index>(j[0].size()) : 0;
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ParseError("matrix rows must be arrays of equal length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

// Every decoder funnels library errors about malformed content into
// ParseError while letting ShapeMismatch through.
template <typename F>
auto guarded(F f) -> decltype(f()) {
  try {
    return f();
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const AlgebraShape& shape) { return Json{{"block_dims", shape.dims()}}; }

Json to_json(const AlgebraElement& a) {
  Json blocks = Json::array();
  for (const Matrix& m : a.blocks()) blocks.push_back(to_json(m));
  return Json{{"block_dims", a.shape().dims()}, {"blocks", std::move(blocks)}};
}

Json to_json(const ModuleVector& f) {
  Json entries = Json::array();
  for (const AlgebraElement& e : f.entries()) entries.push_back(to_json(e));
  return Json{{"algebra", to_json(f.shape().algebra)}, {"rank", f.rank()}, {"entries", std::move(entries)}};
}

Json to_json(const ModuleOperator& t) {
  Json mats = Json::array();
  for (const Matrix& m : t.blocks()) mats.push_back(to_json(m));
  return Json{{"algebra", to_json(t.shape().algebra)}, {"rank", t.shape().rank}, {"block_mats", std::move(mats)}};
}

Json to_json(const FrameSystem& frame) {
  Json vectors = Json::array();
  for (const ModuleVector& v : frame.vectors()) vectors.push_back(to_json(v));
  return Json{{"algebra", to_json(frame.shape().algebra)},
              {"rank", frame.shape().rank},
              {"vectors", std::move(vectors)}};
}

Json to_json(const Symbol& m) {
  Json values = Json::array();
  for (const CentralElement& v : m.values()) {
    Json row = Json::array();
    for (Complex c : v.scalars()) row.push_back(complex_to_json(c));
    values.push_back(std::move(row));
  }
  return Json{{"algebra", to_json(m.shape())}, {"values", std::move(values)}};
}

AlgebraShape algebra_shape_from_json(const Json& j) {
  return guarded([&] {
    const Json& dims = array_field(j, "block_dims");
    std::vector<int> d;
    for (const Json& x : dims) {
      if (!x.is_number_integer()) throw ParseError("block_dims entries must be integers");
      d.push_back(x.get<int>());
    }
    return AlgebraShape(std::move(d));
  });
}

AlgebraElement algebra_element_from_json(const Json& j) {
  return guarded([&] {
    AlgebraShape shape = algebra_shape_from_json(j);
    std::vector<Matrix> blocks;
    for (const Json& b : array_field(j, "blocks")) blocks.push_back(matrix_from_json(b));
    return AlgebraElement(std::move(shape), std::move(blocks));
  });
}

namespace {

ModuleShape module_shape_from_json(const Json& j) {
  return ModuleShape(algebra_shape_from_json(field(j, "algebra")), int_field(j, "rank"));
}

}  // namespace

ModuleVector module_vector_from_json(const Json& j) {
  return guarded([&] {
    ModuleShape shape = module_shape_from_json(j);
    std::vector<AlgebraElement> entries;
    for (const Json& e : array_field(j, "entries")) entries.push_back(algebra_element_from_json(e));
    return ModuleVector(std::move(shape), entries);
  });
}

ModuleOperator module_operator_from_json(const Json& j) {
  return guarded([&] {
    ModuleShape shape = module_shape_from_json(j);
    std::vector<Matrix> mats;
    for (const Json& m : array_field(j, "block_mats")) mats.push_back(matrix_from_json(m));
    return ModuleOperator(std::move(shape), std::move(mats));
  });
}

FrameSystem frame_from_json(const Json& j) {
  return guarded([&] {
    ModuleShape shape = module_shape_from_json(j);
    std::vector<ModuleVector> vectors;
    for (const Json& v : array_field(j, "vectors")) {
      vectors.push_back(module_vector_from_json(v));
      require_same_shape(shape, vectors.back().shape(), "frame vector");
    }
    if (vectors.empty()) throw ParseError("frame file has no vectors");
    return FrameSystem(std::move(vectors));
  });
}

Symbol symbol_from_json(const Json& j) {
  return guarded([&] {
    AlgebraShape shape = algebra_shape_from_json(field(j, "algebra"));
    std::vector<CentralElement> values;
    for (const Json& row : array_field(j, "values")) {
      if (!row.is_array()) throw ParseError("symbol values must be arrays of [re,im] pairs");
      std::vector<Complex> s;
      for (const Json& c : row) s.push_back(complex_from_json(c));
      values.emplace_back(shape, std::move(s));
    }
    return Symbol(std::move(shape), std::move(values));
  });
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out << j.dump(1) << '\n';
}

}  // namespace csframe
