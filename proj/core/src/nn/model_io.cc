// Copyright 2026 The pdg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "pdg/nn/model_io.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include <json.hpp>

namespace pdg::nn {
namespace {

using nlohmann::json;

constexpr char kMagic[8] = {'P', 'D', 'G', 'M', 'O', 'D', 'E', 'L'};

static_assert(std::endian::native == std::endian::little,
              "model files are written in little-endian byte order");

void WriteU64(std::ostream& out, std::uint64_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

std::uint64_t ReadU64(std::istream& in) {
  std::uint64_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  if (!in) throw ModelFormatError("model: truncated header");
  return v;
}

void WriteMatrix(std::ostream& out, const Matrix& m) {
  // Row-major on disk.
  std::vector<double> buf(std::size_t(m.size()));
  std::size_t i = 0;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) buf[i++] = m(r, c);
  }
  out.write(reinterpret_cast<const char*>(buf.data()), std::streamsize(buf.size() * sizeof(double)));
}

Matrix ReadMatrix(std::istream& in, Eigen::Index rows, Eigen::Index cols, const std::string& name) {
  std::vector<double> buf(std::size_t(rows * cols));
  in.read(reinterpret_cast<char*>(buf.data()), std::streamsize(buf.size() * sizeof(double)));
  if (!in) throw ModelFormatError("model: truncated data for tensor " + name);
  Matrix m(rows, cols);
  std::size_t i = 0;
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = buf[i++];
  }
  return m;
}

}  // namespace

const char* ToString(Target target) {
  return target == Target::kConstraints ? "constraints" : "time";
}

Target ParseTarget(const std::string& text) {
  if (text == "constraints") return Target::kConstraints;
  if (text == "time") return Target::kTime;
  throw std::invalid_argument("unknown model target '" + text + "' (constraints|time)");
}

Matrix ModelBundle::Predict(const Matrix& theta) const {
  return net.Forward(standardizer.Apply(theta));
}

Matrix ModelBundle::Embed(const Matrix& theta, Matrix* outputs) const {
  Matrix emb;
  Matrix out = net.Forward(standardizer.Apply(theta), &emb);
  if (outputs) *outputs = std::move(out);
  return emb;
}

void SaveModel(const ModelBundle& model, std::ostream& out) {
  const TransformerConfig& c = model.net.config();
  json header;
  header["format_version"] = kModelFormatVersion;
  header["target"] = ToString(model.target);
  header["layout_version"] = model.layout_version;
  header["mission_hash"] = model.mission_hash;
  header["nodes"] = model.nodes;
  header["optimizer"] = model.optimizer;
  header["parameter_count"] = model.net.ParameterCount();
  header["config"] = {{"input_dim", c.input_dim}, {"output_dim", c.output_dim},
                      {"d_model", c.d_model},     {"n_heads", c.n_heads},
                      {"n_layers", c.n_layers},   {"d_ff", c.ff_width()},
                      {"dropout", c.dropout},     {"tokens", ToString(c.tokens)}};

  std::vector<std::pair<std::string, const Matrix*>> tensors;
  const Matrix mean = model.standardizer.mean;
  const Matrix std = model.standardizer.std;
  tensors.emplace_back("standardizer.mean", &mean);
  tensors.emplace_back("standardizer.std", &std);
  for (const Parameter& p : model.net.parameters()) tensors.emplace_back(p.name, &p.value);
  json list = json::array();
  for (const auto& [name, m] : tensors) {
    list.push_back({{"name", name}, {"rows", m->rows()}, {"cols", m->cols()}});
  }
  header["tensors"] = list;

  const std::string text = header.dump();
  out.write(kMagic, sizeof(kMagic));
  WriteU64(out, text.size());
  out.write(text.data(), std::streamsize(text.size()));
  for (const auto& [name, m] : tensors) WriteMatrix(out, *m);
  if (!out) throw std::runtime_error("model: write failed");
}

void SaveModel(const ModelBundle& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  SaveModel(model, out);
}

ModelBundle LoadModel(std::istream& in) {
  char magic[sizeof(kMagic)];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw ModelFormatError("model: bad magic (not a model file)");
  }
  const std::uint64_t length = ReadU64(in);
  if (length > (1u << 26)) throw ModelFormatError("model: header too large");
  std::string text(length, '\0');
  in.read(text.data(), std::streamsize(length));
  if (!in) throw ModelFormatError("model: truncated header");

  json header;
  try {
    header = json::parse(text);
    if (header.at("format_version").get<int>() != kModelFormatVersion) {
      throw ModelFormatError("model: unsupported format version " +
                             std::to_string(header.at("format_version").get<int>()));
    }
    const json& jc = header.at("config");
    TransformerConfig c;
    c.input_dim = jc.at("input_dim").get<int>();
    c.output_dim = jc.at("output_dim").get<int>();
    c.d_model = jc.at("d_model").get<int>();
    c.n_heads = jc.at("n_heads").get<int>();
    c.n_layers = jc.at("n_layers").get<int>();
    c.d_ff = jc.at("d_ff").get<int>();
    c.dropout = jc.at("dropout").get<double>();
    c.tokens = ParseTokenMode(jc.at("tokens").get<std::string>());

    ModelBundle model(ParseTarget(header.at("target").get<std::string>()), c, 0);
    model.layout_version = header.at("layout_version").get<std::string>();
    model.mission_hash = header.at("mission_hash").get<std::string>();
    model.nodes = header.at("nodes").get<int>();
    model.optimizer = header.at("optimizer").get<std::string>();

    const json& list = header.at("tensors");
    const std::size_t expected = model.net.parameters().size() + 2;
    if (list.size() != expected) {
      throw ModelFormatError("model: expected " + std::to_string(expected) + " tensors, found " +
                             std::to_string(list.size()));
    }
    for (const json& t : list) {
      const std::string name = t.at("name").get<std::string>();
      const Eigen::Index rows = t.at("rows").get<Eigen::Index>();
      const Eigen::Index cols = t.at("cols").get<Eigen::Index>();
      Matrix m = ReadMatrix(in, rows, cols, name);
      if (name == "standardizer.mean" || name == "standardizer.std") {
        if (rows != 1 || cols != c.input_dim) {
          throw ModelFormatError("model: bad shape for " + name);
        }
        (name == "standardizer.mean" ? model.standardizer.mean : model.standardizer.std) = m;
        continue;
      }
      Parameter& p = model.net.parameter(name);
      if (p.value.rows() != rows || p.value.cols() != cols) {
        throw ModelFormatError("model: shape mismatch for tensor " + name);
      }
      p.value = std::move(m);
    }
    return model;
  } catch (const json::exception& e) {
    throw ModelFormatError(std::string("model: malformed header: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw ModelFormatError(std::string("model: ") + e.what());
  }
}

ModelBundle LoadModel(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return LoadModel(in);
}

}  // namespace pdg::nn
