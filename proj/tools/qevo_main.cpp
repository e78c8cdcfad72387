#include <fstream>
#include <iostream>

#include "qevo/cli.hpp"

namespace {

// Replays the first seed's evaluation episode with its final elite and
// writes a step-by-step trace.
int write_demo_trace(const qevo::CliOptions& options,
                     const qevo::ExperimentOutput& output) {
  const qevo::EvolutionConfig& evo = options.config.evolution;
  qevo::EpisodeTrace trace;
  qevo::evaluate_fitness(
      evo.agent, output.final_elites.front(),
      qevo::evaluation_seed(options.config.seeds.front(), evo.generations, 0,
                            evo.agent.kind),
      evo.episode_steps, &trace);
  std::ofstream out(options.trace_file, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open " << options.trace_file << '\n';
    return 1;
  }
  for (const qevo::StepRecord& record : trace) {
    out << qevo::format_step_line(record) << '\n';
  }
  return out ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  qevo::CliOptions options;
  if (const auto exit_code = qevo::parse_command_line(argc, argv, options)) {
    return *exit_code;
  }
  qevo::ExperimentOutput output;
  const int status = qevo::run_experiment(options.config, &output);
  if (status != 0) return status;
  if (!options.trace_file.empty()) {
    return write_demo_trace(options, output);
  }
  return 0;
}
