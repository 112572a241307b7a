#include "sn/member_file.hpp"

#include <fstream>
#include <sstream>

namespace sn {

MemberFile read_member_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open member file: " + path);
    MemberFile f;
    std::string line;
    if (!std::getline(in, line) || line != "# smooth-neighbors members")
        throw std::runtime_error(path + ": missing member-file magic line");
    while (in.peek() == '#' && std::getline(in, line)) {
        std::istringstream ss(line);
        std::string hash, key;
        ss >> hash >> key;
        if (key == "k") {
            std::string v;
            ss >> v;
            f.k = parse_nat(v);
        } else if (key == "z") {
            ss >> f.z;
        } else if (key == "complete") {
            int c;
            ss >> c;
            f.complete = c != 0;
        } else if (key == "generator") {
            std::getline(ss >> std::ws, f.generator);
        } else {
            throw std::runtime_error(path + ": unknown header key " + key);
        }
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Nat m = parse_nat(line);
        if (!f.members.empty() && m <= f.members.back())
            throw std::runtime_error(path + ": members not strictly increasing at " + line);
        f.members.push_back(std::move(m));
    }
    return f;
}

void write_member_file(const MemberFile& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write member file: " + path);
    out << "# smooth-neighbors members\n";
    out << "# k " << to_string(f.k) << "\n";
    out << "# z " << f.z << "\n";
    out << "# complete " << (f.complete ? 1 : 0) << "\n";
    out << "# generator " << f.generator << "\n";
    for (const Nat& m : f.members) out << to_string(m) << "\n";
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    auto emit = [&](const std::vector<std::string>& row) {
        for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << "\n";
    };
    emit(header);
    for (const auto& row : rows) emit(row);
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> row;
        std::istringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(cell);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace sn
