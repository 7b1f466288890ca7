#include "zipflab/csv.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace zipflab::io {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    return out;
}

}  // namespace

std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

void write_sizes_csv(const std::string& path, const std::vector<double>& sizes) {
    auto out = open_out(path);
    out << "size\n";
    for (double s : sizes) out << format_double(s) << "\n";
}

void write_flows_csv(const std::string& path, const std::vector<FlowPoint>& flows) {
    auto out = open_out(path);
    out << "t,births,absorptions,sudden_deaths,live,total_value\n";
    for (const auto& fp : flows)
        out << format_double(fp.t) << ',' << fp.births << ',' << fp.absorptions << ','
            << fp.sudden_deaths << ',' << fp.live << ',' << format_double(fp.total_value)
            << "\n";
}

void write_lifespans_csv(const std::string& path, const std::vector<LifespanRecord>& records) {
    auto out = open_out(path);
    out << "firm_id,duration,cause\n";
    for (const auto& r : records)
        out << r.firm_id << ',' << format_double(r.duration) << ',' << to_string(r.cause)
            << "\n";
}

void write_density_csv(const std::string& path, const DensitySolution& solution) {
    auto out = open_out(path);
    out << "s,f\n";
    for (std::size_t i = 0; i < solution.grid.size(); ++i)
        out << format_double(solution.grid[i]) << ',' << format_double(solution.density[i])
            << "\n";
}

void write_ccdf_csv(const std::string& path,
                    const std::vector<std::pair<double, double>>& points) {
    auto out = open_out(path);
    out << "s,P\n";
    for (const auto& [s, p] : points)
        out << format_double(s) << ',' << format_double(p) << "\n";
}

void write_path_csv(const std::string& path, const PathSample& sample) {
    auto out = open_out(path);
    out << "t,s\n";
    for (std::size_t i = 0; i < sample.times.size(); ++i)
        out << format_double(sample.times[i]) << ',' << format_double(sample.values[i])
            << "\n";
}

void write_birth_schedule_csv(const std::string& path, const BirthSchedule& schedule) {
    auto out = open_out(path);
    out << "t_birth,s_entry\n";
    for (std::size_t i = 0; i < schedule.instants.size(); ++i)
        out << format_double(schedule.instants[i]) << ','
            << format_double(schedule.entry_sizes[i]) << "\n";
}

void write_ma_events_csv(const std::string& path, const std::vector<MAEvent>& events) {
    auto out = open_out(path);
    out << "t,kind,parent_ids,child_ids,sizes\n";
    for (const auto& e : events) {
        out << format_double(e.t) << ',' << e.kind << ',';
        if (e.kind == 'M')
            out << e.parent_a << ';' << e.parent_b << ',' << e.child_a << ','
                << format_double(e.size_a);
        else
            out << e.parent_a << ',' << e.child_a << ';' << e.child_b << ','
                << format_double(e.size_a) << ';' << format_double(e.size_b);
        out << "\n";
    }
}

std::vector<double> read_sizes_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open sizes file: " + path);
    std::vector<double> sizes;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line == "size") continue;  // optional header
        }
        double value = 0.0;
        const auto res = std::from_chars(line.data(), line.data() + line.size(), value);
        if (res.ec != std::errc{} || res.ptr != line.data() + line.size())
            throw std::runtime_error("malformed sizes file " + path + ": \"" + line + "\"");
        sizes.push_back(value);
    }
    return sizes;
}

}  // namespace zipflab::io
