#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nakamoto/model.hpp"

namespace nakamoto::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kDomain = 3,
  kSearchBound = 4,
  kIntegrity = 5,
};

enum class SweepVariable { q, A, z, v };

enum class SweepOutput { P, E_R, E_T, Gamma, Gamma_H };

struct SweepSpec {
  SweepVariable variable = SweepVariable::q;
  std::vector<double> values;
  model::AttackParams fixed;
  std::vector<SweepOutput> outputs{SweepOutput::P, SweepOutput::E_R, SweepOutput::E_T,
                                   SweepOutput::Gamma, SweepOutput::Gamma_H};
};

// "start:stop:step" (stop inclusive) or a comma-separated list. Grid points
// are rounded to 12 significant digits so that printed values are exactly the
// evaluated ones. Throws std::invalid_argument on malformed or empty ranges.
std::vector<double> parse_range(const std::string& text);

SweepVariable parse_variable(const std::string& name);
std::vector<SweepOutput> parse_outputs(const std::string& list);

void write_sweep_csv(const SweepSpec& spec, std::ostream& out);
// Data behind the published figures (z = 2, v = 1, A in {3, 5, 10}).
void write_figure_csv(int figure, std::ostream& out);

// Entry point shared by the executable and the tests. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nakamoto::cli
