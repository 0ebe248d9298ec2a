#pragma once

#include <filesystem>

namespace neuroauth {

// Reruns the two reference experiments with fixed seeds and writes their
// learning curves and per-candidate difference vectors as CSV files:
//   exp1: enroll "neural",        test neural / meural / neurba / signal
//   exp2: enroll "architecture",  test architecture / manojkrsingh / manoj_singh
// Curve files carry "epoch,error" rows; diff files carry
// "node_index,abs_difference" rows with the final-output difference last.
// Candidates rejected by the length pre-check produce a header-only file.
void replicate_experiments(const std::filesystem::path& out_dir);

} // namespace neuroauth
