#pragma once

#include <optional>
#include <string>

#include "qbmor/qb_model.hpp"

namespace qbmor {

// On-disk system format: one directory holding
//
//   manifest.json   {"name", "n", "notes", "q_symmetrized", ...}
//   E.mtx A.mtx N.mtx Q.mtx B.mtx C.mtx   Matrix Market, coordinate real general
//   x0.mtx          optional initial state
//   V.mtx W.mtx     optional projection bases (reduced models only)
//
// Q is stored as its n x n^2 mode-1 matricization. Values are written with 17
// significant digits so a save/load round trip is bit-identical.

void write_matrix_market(const std::string& path, const SpMat& m);
SpMat read_matrix_market(const std::string& path);

void save_system(const QBSystem& sys, const std::string& dir, const std::string& notes = {});
QBSystem load_system(const std::string& dir);

/// Writes V and W next to a saved reduced system.
void save_bases(const Mat& V, const Mat& W, const std::string& dir);
std::optional<std::pair<Mat, Mat>> load_bases(const std::string& dir);

}  // namespace qbmor
