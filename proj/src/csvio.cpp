#include "susd/csvio.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "susd/errors.hpp"

namespace susd {

namespace {

void append_number(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

void append_optional(std::string& out, const std::optional<double>& v) {
    if (v)
        append_number(out, *v);
    else
        out += "nan";
}

double parse_number(std::string_view token, std::size_t line_no) {
    if (token == "nan" || token == "-nan") return std::nan("");
    double value = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        throw ParseError("csv: bad number \"" + std::string(token) + "\" on line " +
                         std::to_string(line_no));
    return value;
}

long parse_integer(std::string_view token, std::size_t line_no) {
    long value = 0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        throw ParseError("csv: bad integer \"" + std::string(token) + "\" on line " +
                         std::to_string(line_no));
    return value;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

constexpr const char* kTrajectoryHeader = "step,t,agent,x,y,z,qx,qy,nx,ny";

}  // namespace

std::string trajectory_csv(const TrajectoryLog& log) {
    std::string out = kTrajectoryHeader;
    out += '\n';
    for (const StepRecord& row : log.rows) {
        for (std::size_t i = 0; i < row.positions.size(); ++i) {
            out += std::to_string(row.step);
            out += ',';
            append_number(out, row.t);
            out += ',';
            out += std::to_string(i);
            out += ',';
            append_number(out, row.positions[i].x);
            out += ',';
            append_number(out, row.positions[i].y);
            out += ',';
            append_number(out, row.z[i]);
            out += ',';
            append_number(out, row.frames[i].q.x);
            out += ',';
            append_number(out, row.frames[i].q.y);
            out += ',';
            append_number(out, row.frames[i].n.x);
            out += ',';
            append_number(out, row.frames[i].n.y);
            out += '\n';
        }
    }
    return out;
}

std::string diagnostics_csv(const TrajectoryLog& log,
                            const std::vector<std::vector<DiagnosticsRow>>& diagnostics) {
    if (diagnostics.size() != log.rows.size())
        throw std::invalid_argument("diagnostics_csv: row count mismatch");
    std::string out =
        "step,t,agent,theta,psi,lambda_q,lambda_n,z_c,z_c_d,nu_max,predictor_residual\n";
    for (std::size_t r = 0; r < log.rows.size(); ++r) {
        const StepRecord& row = log.rows[r];
        for (std::size_t i = 0; i < diagnostics[r].size(); ++i) {
            const DiagnosticsRow& d = diagnostics[r][i];
            out += std::to_string(row.step);
            out += ',';
            append_number(out, row.t);
            out += ',';
            out += std::to_string(i);
            out += ',';
            append_optional(out, d.theta);
            out += ',';
            append_number(out, d.psi);
            out += ',';
            append_number(out, d.lambda_q);
            out += ',';
            append_number(out, d.lambda_n);
            out += ',';
            append_number(out, d.z_c);
            out += ',';
            append_number(out, d.z_c_d);
            out += ',';
            append_number(out, d.nu_max);
            out += ',';
            append_optional(out, d.predictor_residual);
            out += '\n';
        }
    }
    return out;
}

TrajectoryLog parse_trajectory_csv(const std::string& text) {
    TrajectoryLog log;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) throw ParseError("csv: empty trajectory file");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kTrajectoryHeader)
        throw ParseError("csv: unexpected trajectory header \"" + line + "\"");

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string_view> f = split_fields(line);
        if (f.size() != 10)
            throw ParseError("csv: expected 10 fields on line " + std::to_string(line_no));
        const long step = parse_integer(f[0], line_no);
        const double t = parse_number(f[1], line_no);
        const long agent = parse_integer(f[2], line_no);

        if (log.rows.empty() || log.rows.back().step != step) {
            if (!log.rows.empty() && step != log.rows.back().step + 1)
                throw ParseError("csv: non-consecutive step on line " + std::to_string(line_no));
            StepRecord row;
            row.step = step;
            row.t = t;
            log.rows.push_back(std::move(row));
        }
        StepRecord& row = log.rows.back();
        if (agent != static_cast<long>(row.positions.size()))
            throw ParseError("csv: out-of-order agent id on line " + std::to_string(line_no));
        row.positions.push_back({parse_number(f[3], line_no), parse_number(f[4], line_no)});
        row.z.push_back(parse_number(f[5], line_no));
        BodyFrame frame;
        frame.q = {parse_number(f[6], line_no), parse_number(f[7], line_no)};
        frame.n = {parse_number(f[8], line_no), parse_number(f[9], line_no)};
        row.frames.push_back(frame);
    }
    if (log.rows.empty()) throw ParseError("csv: trajectory has no rows");
    for (const StepRecord& row : log.rows) {
        if (row.positions.size() != log.rows.front().positions.size())
            throw ParseError("csv: agent count varies between steps");
    }
    log.dt = log.rows.size() > 1 ? log.rows[1].t - log.rows[0].t : 0.0;
    return log;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open for writing: " + path);
    out << content;
    if (!out) throw ParseError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace susd
