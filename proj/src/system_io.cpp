#include "qbmor/system_io.hpp"

#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace qbmor {

namespace fs = std::filesystem;

void write_matrix_market(const std::string& path, const SpMat& m) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  out.precision(std::numeric_limits<double>::max_digits10);
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
  for (Index col = 0; col < m.outerSize(); ++col) {
    for (SpMat::InnerIterator it(m, col); it; ++it) {
      out << it.row() + 1 << ' ' << col + 1 << ' ' << it.value() << '\n';
    }
  }
  if (!out) throw FormatError("write failed for " + path);
}

SpMat read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw FormatError(path + ": empty file");
  {
    std::istringstream hs(line);
    std::string banner, object, format, field, symmetry;
    hs >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket" || object != "matrix" || format != "coordinate" ||
        field != "real" || symmetry != "general") {
      throw FormatError(path + ": expected '%%MatrixMarket matrix coordinate real general'");
    }
  }
  while (std::getline(in, line) && (line.empty() || line[0] == '%')) {
  }
  long long rows = -1, cols = -1, nnz = -1;
  {
    std::istringstream ss(line);
    if (!(ss >> rows >> cols >> nnz) || rows < 0 || cols < 0 || nnz < 0) {
      throw FormatError(path + ": malformed size line");
    }
  }
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(static_cast<std::size_t>(nnz));
  for (long long k = 0; k < nnz; ++k) {
    long long i, j;
    double v;
    if (!(in >> i >> j >> v)) throw FormatError(path + ": truncated entry list");
    if (i < 1 || i > rows || j < 1 || j > cols) {
      throw FormatError(path + ": entry index out of range");
    }
    t.emplace_back(static_cast<Index>(i - 1), static_cast<Index>(j - 1), v);
  }
  SpMat m(static_cast<Index>(rows), static_cast<Index>(cols));
  m.setFromTriplets(t.begin(), t.end());
  m.makeCompressed();
  return m;
}

namespace {

SpMat sparse_of(const Mat& m) { return m.sparseView(); }

Mat dense_checked(const SpMat& m, Index rows, Index cols, const std::string& what) {
  if (m.rows() != rows || m.cols() != cols) {
    throw DimensionError(what + " is " + std::to_string(m.rows()) + " x " +
                         std::to_string(m.cols()) + ", manifest implies " + std::to_string(rows) +
                         " x " + std::to_string(cols));
  }
  return Mat(m);
}

}  // namespace

void save_system(const QBSystem& sys, const std::string& dir, const std::string& notes) {
  fs::create_directories(dir);
  const fs::path d(dir);
  const Index n = sys.n();
  nlohmann::json manifest = {{"name", sys.name()},
                             {"n", n},
                             {"notes", notes},
                             {"q_symmetrized", sys.q_symmetrized()},
                             {"has_initial_state", sys.initial_state().size() > 0}};
  {
    std::ofstream out(d / "manifest.json");
    if (!out) throw FormatError("cannot write manifest in " + dir);
    out << manifest.dump(2) << '\n';
  }
  write_matrix_market((d / "E.mtx").string(), sparse_of(sys.E()));
  write_matrix_market((d / "A.mtx").string(), sparse_of(sys.A()));
  write_matrix_market((d / "N.mtx").string(), sparse_of(sys.N()));
  write_matrix_market((d / "Q.mtx").string(), sys.Q());
  write_matrix_market((d / "B.mtx").string(), sparse_of(Mat(sys.B())));
  write_matrix_market((d / "C.mtx").string(), sparse_of(Mat(sys.C())));
  if (sys.initial_state().size() > 0) {
    write_matrix_market((d / "x0.mtx").string(), sparse_of(Mat(sys.initial_state())));
  }
}

QBSystem load_system(const std::string& dir) {
  const fs::path d(dir);
  std::ifstream in(d / "manifest.json");
  if (!in) throw FormatError("missing manifest.json in " + dir);
  nlohmann::json manifest;
  try {
    in >> manifest;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("malformed manifest in " + dir + ": " + e.what());
  }
  if (!manifest.is_object() || !manifest.contains("n") || !manifest["n"].is_number_integer() ||
      manifest["n"].get<long long>() <= 0) {
    throw FormatError("manifest in " + dir + " needs a positive integer 'n'");
  }
  const Index n = manifest["n"].get<Index>();
  const std::string name = manifest.value("name", std::string{});

  auto load = [&](const char* file) { return read_matrix_market((d / file).string()); };
  Mat E = dense_checked(load("E.mtx"), n, n, "E");
  Mat A = dense_checked(load("A.mtx"), n, n, "A");
  Mat N = dense_checked(load("N.mtx"), n, n, "N");
  SpMat Q = load("Q.mtx");
  if (Q.rows() != n || Q.cols() != n * n) {
    throw DimensionError("Q is " + std::to_string(Q.rows()) + " x " + std::to_string(Q.cols()) +
                         ", expected " + std::to_string(n) + " x " + std::to_string(n * n));
  }
  Vec B = dense_checked(load("B.mtx"), n, 1, "B").col(0);
  RowVec C = dense_checked(load("C.mtx"), 1, n, "C").row(0);
  Vec x0;
  if (fs::exists(d / "x0.mtx")) x0 = dense_checked(load("x0.mtx"), n, 1, "x0").col(0);
  return QBSystem(std::move(E), std::move(A), std::move(N), std::move(Q), std::move(B),
                  std::move(C), name, std::move(x0));
}

void save_bases(const Mat& V, const Mat& W, const std::string& dir) {
  fs::create_directories(dir);
  write_matrix_market((fs::path(dir) / "V.mtx").string(), V.sparseView());
  write_matrix_market((fs::path(dir) / "W.mtx").string(), W.sparseView());
}

std::optional<std::pair<Mat, Mat>> load_bases(const std::string& dir) {
  const fs::path d(dir);
  if (!fs::exists(d / "V.mtx") || !fs::exists(d / "W.mtx")) return std::nullopt;
  return std::make_pair(Mat(read_matrix_market((d / "V.mtx").string())),
                        Mat(read_matrix_market((d / "W.mtx").string())));
}

}  // namespace qbmor
