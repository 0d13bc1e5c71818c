#include "vds/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace vds {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void write_csv(const SimOutput& out, const std::filesystem::path& file) {
    std::ofstream f(file);
    if (!f) throw std::runtime_error("write_csv: cannot open " + file.string());

    f << "t";
    for (const auto& s : out.state_names) f << ',' << s;
    for (const auto& s : out.input_names) f << ',' << s;
    if (out.has_sensitivity)
        for (std::size_t i = 0; i < out.n_states(); ++i)
            for (std::size_t k = 0; k < out.n_params(); ++k) f << ',' << out.z_col_name(i, k);
    f << '\n';

    for (std::size_t row = 0; row < out.t.size(); ++row) {
        f << num(out.t[row]);
        for (std::size_t i = 0; i < out.n_states(); ++i) f << ',' << num(out.states(row, i));
        for (std::size_t i = 0; i < out.input_names.size(); ++i)
            f << ',' << num(out.inputs(row, i));
        if (out.has_sensitivity)
            for (std::size_t i = 0; i < out.n_states(); ++i)
                for (std::size_t k = 0; k < out.n_params(); ++k)
                    f << ',' << num(out.z_at(row, i, k));
        f << '\n';
    }
    if (!f) throw std::runtime_error("write_csv: write failed for " + file.string());
}

std::size_t CsvTable::col(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw std::out_of_range("csv: no column " + name);
}

bool CsvTable::has_col(const std::string& name) const {
    for (const auto& h : header)
        if (h == name) return true;
    return false;
}

CsvTable read_csv(const std::filesystem::path& file) {
    std::ifstream f(file);
    if (!f) throw std::runtime_error("read_csv: cannot open " + file.string());

    CsvTable t;
    std::string line;
    if (!std::getline(f, line)) throw std::runtime_error("read_csv: empty file " + file.string());
    if (!line.empty() && line.back() == '\r') line.pop_back();
    {
        std::istringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) t.header.push_back(cell);
    }
    if (t.header.empty()) throw std::runtime_error("read_csv: empty header in " + file.string());

    std::vector<double> values;
    std::size_t rows = 0;
    while (std::getline(f, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string cell;
        std::size_t cols = 0;
        while (std::getline(ss, cell, ',')) {
            std::size_t pos = 0;
            double v;
            try {
                v = std::stod(cell, &pos);
            } catch (const std::exception&) {
                throw std::runtime_error("read_csv: non-numeric cell '" + cell + "' in " +
                                         file.string());
            }
            if (pos != cell.size())
                throw std::runtime_error("read_csv: non-numeric cell '" + cell + "' in " +
                                         file.string());
            values.push_back(v);
            ++cols;
        }
        if (cols != t.header.size())
            throw std::runtime_error("read_csv: ragged row in " + file.string());
        ++rows;
    }
    t.data = Mat(rows, t.header.size());
    t.data.a = std::move(values);
    return t;
}

}  // namespace vds
