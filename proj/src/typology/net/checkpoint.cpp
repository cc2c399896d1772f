// Copyright 2026 The Typology Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "typology/net/checkpoint.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "typology/error.hpp"

namespace typology::net {
namespace {

class Reader {
 public:
  Reader(std::istream& in, const std::string& name) : in_(in), name_(name) {}

  std::string line() {
    std::string s;
    if (!std::getline(in_, s)) fail("unexpected end of file");
    ++line_no_;
    return s;
  }

  std::istringstream fields(const std::string& keyword) {
    std::istringstream ss(line());
    std::string k;
    ss >> k;
    if (k != keyword) fail("expected '" + keyword + "', found '" + k + "'");
    return ss;
  }

  std::string quoted() {
    try {
      return nlohmann::json::parse(line()).get<std::string>();
    } catch (const nlohmann::json::exception&) {
      fail("bad vocabulary entry");
    }
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(name_ + ":" + std::to_string(line_no_) + ": " + what);
  }

 private:
  std::istream& in_;
  const std::string& name_;
  int line_no_ = 0;
};

long read_count(Reader& r, const std::string& keyword) {
  auto ss = r.fields(keyword);
  long n = -1;
  if (!(ss >> n) || n < 0) r.fail("bad count after '" + keyword + "'");
  return n;
}

}  // namespace

void write_model(std::ostream& out, const Model& model) {
  out << "typology-model " << kCheckpointVersion << '\n';
  out << "shape " << model.shape.embedding_dim << ' ' << model.shape.hidden << ' '
      << model.shape.mlp1 << ' ' << model.shape.mlp2 << '\n';
  out << "mode " << to_string(model.mode) << '\n';
  out << "words " << model.vocab.words().size() << '\n';
  for (const std::string& w : model.vocab.words()) out << nlohmann::json(w).dump() << '\n';
  out << "ngrams " << model.vocab.ngrams().size() << '\n';
  for (const std::string& g : model.vocab.ngrams()) out << nlohmann::json(g).dump() << '\n';
  char buf[64];
  for (const auto& t : model.params.tensors()) {
    const Mat<float>& m = *t.value;
    out << "tensor " << t.name << ' ' << m.rows() << ' ' << m.cols() << '\n';
    std::string line;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      line.clear();
      for (Eigen::Index i = 0; i < m.rows(); ++i) {
        if (i) line += ' ';
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, m(i, j));
        line.append(buf, end);
      }
      out << line << '\n';
    }
  }
  out << "end\n";
}

Model read_model(std::istream& in, const std::string& name) {
  Reader r(in, name);
  Model model;
  {
    auto ss = r.fields("typology-model");
    int version = 0;
    if (!(ss >> version) || version != kCheckpointVersion) r.fail("unsupported checkpoint version");
  }
  {
    auto ss = r.fields("shape");
    ModelShape& s = model.shape;
    if (!(ss >> s.embedding_dim >> s.hidden >> s.mlp1 >> s.mlp2)) r.fail("bad shape line");
    try {
      s.validate();
    } catch (const InvalidArgument& e) {
      r.fail(e.what());
    }
  }
  {
    auto ss = r.fields("mode");
    std::string m;
    ss >> m;
    try {
      model.mode = mode_from_string(m);
    } catch (const InvalidArgument& e) {
      r.fail(e.what());
    }
  }
  for (long i = 0, n = read_count(r, "words"); i < n; ++i) {
    try {
      model.vocab.add_word(r.quoted());
    } catch (const ParseError& e) {
      r.fail(e.what());
    }
  }
  for (long i = 0, n = read_count(r, "ngrams"); i < n; ++i) model.vocab.add_ngram(r.quoted());
  if (model.vocab.ngram_rows() != static_cast<int>(model.vocab.ngrams().size()))
    r.fail("duplicate n-gram");

  const Params<float> expected = init_params<float>(model.shape, model.vocab.word_rows(),
                                                    model.vocab.ngram_rows(), 0);
  auto want = expected.tensors();
  auto have = model.params.tensors();
  for (std::size_t k = 0; k < have.size(); ++k) {
    auto ss = r.fields("tensor");
    std::string tensor_name;
    long rows = -1, cols = -1;
    ss >> tensor_name >> rows >> cols;
    if (tensor_name != have[k].name) r.fail("expected tensor " + std::string(have[k].name));
    if (rows != want[k].value->rows() || cols != want[k].value->cols())
      r.fail("tensor " + tensor_name + " has the wrong shape");
    Mat<float>& m = *have[k].value;
    m.resize(rows, cols);
    for (long j = 0; j < cols; ++j) {
      const std::string line = r.line();
      const char* p = line.data();
      const char* end = line.data() + line.size();
      for (long i = 0; i < rows; ++i) {
        while (p < end && *p == ' ') ++p;
        float v = 0;
        auto [next, ec] = std::from_chars(p, end, v);
        if (ec != std::errc()) r.fail("bad value in tensor " + tensor_name);
        m(i, j) = v;
        p = next;
      }
      while (p < end && *p == ' ') ++p;
      if (p != end) r.fail("trailing data in tensor " + tensor_name);
    }
  }
  if (r.line() != "end") r.fail("expected 'end'");
  if (!model.params.all_finite()) throw NumericError(name + ": checkpoint holds non-finite values");
  return model;
}

void save_model(const std::string& path, const Model& model) {
  std::ostringstream out;
  write_model(out, model);
  write_file_atomically(path, out.str());
}

Model load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  return read_model(in, path);
}

}  // namespace typology::net
