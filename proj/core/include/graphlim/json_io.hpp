#pragma once

#include <string>

#include "graphlim/cut.hpp"
#include "graphlim/hf.hpp"
#include "graphlim/kernel.hpp"
#include "graphlim/qr.hpp"

namespace graphlim {

// Kernel file format: {"weights":[...], "values":[[...]], "range":"graphon"|"signed"}.
// Reals are written with 17 significant digits so files round-trip exactly.
std::string kernel_to_json(const StepKernel& w);
StepKernel kernel_from_json(const std::string& text);

std::string report_to_json(const DeviationReport& rep);
std::string report_to_csv(const DeviationReport& rep);

std::string cut_result_to_json(const CutResult& res);

std::string verdict_to_json(const HFVerdict& verdict);

std::string convergence_to_csv(const ConvergenceReport& rep); // columns: n, pattern, deviation
std::string convergence_to_json(const ConvergenceReport& rep);

} // namespace graphlim
