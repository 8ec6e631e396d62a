#pragma once

#include <string>
#include <vector>

#include "susd/engine.hpp"
#include "susd/theory.hpp"

namespace susd {

// Lossless text round-trip for trajectory logs.
//
// trajectory.csv:  step,t,agent,x,y,z,qx,qy,nx,ny
// diagnostics.csv: step,t,agent,theta,psi,lambda_q,lambda_n,z_c,z_c_d,nu_max,predictor_residual
//
// One row per (step, agent), steps ascending, agents ascending within a step.
// Numbers are printed with %.17g so doubles survive the round trip exactly;
// missing values (undefined theta near a critical point, skipped residuals)
// are written as "nan".

std::string trajectory_csv(const TrajectoryLog& log);

std::string diagnostics_csv(const TrajectoryLog& log,
                            const std::vector<std::vector<DiagnosticsRow>>& diagnostics);

// Parses trajectory.csv text back into a log. dt is recovered from the t
// column (t of the first row of step 1); a single-row log gets dt = 0.
// Throws ParseError on malformed headers, rows, or numbers.
TrajectoryLog parse_trajectory_csv(const std::string& text);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace susd
