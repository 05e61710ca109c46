#pragma once

#include <ostream>
#include <vector>

#include "mmtc/scenario.hpp"

namespace mmtc::commands {

// Every command writes one CSV table: a comment line with the seed and the
// config hash, a header row, then data rows. Return value is the process exit
// code (0, or 3 when an iterative method failed to converge). Configuration
// problems throw ConfigError, unmeetable QoS targets throw InfeasibleQosError.

struct CapacitySweepSpec {
    std::vector<int> preambles{10, 20, 30, 40, 50, 60};
    std::vector<double> bandwidths_hz{180e3, 360e3, 720e3, 1440e3};
};
int capacity_sweep(const Scenario& sc, const CapacitySweepSpec& spec, std::ostream& out);

struct QosSweepSpec {
    std::vector<double> exponents; // swept values for one class
    int class_index = 0;
};
int qos_sweep(const Scenario& sc, const QosSweepSpec& spec, std::ostream& out);

int game(const Scenario& sc, std::ostream& out);
int price(const Scenario& sc, std::ostream& out);
int compare(const Scenario& sc, std::ostream& out);
int simulate(const Scenario& sc, std::ostream& out, std::ostream* histograms);

} // namespace mmtc::commands
