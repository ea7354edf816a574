#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "instance.hpp"

namespace mpsched {

namespace detail {

// Token stream over the instance format: '#' comments out the rest of a line,
// tokens are whitespace separated, line numbers tracked for errors.
struct TokenStream {
    std::vector<std::pair<std::string, int>> tokens;  // (token, 1-based line)
    std::size_t pos = 0;
    int last_line = 1;

    explicit TokenStream(const std::string& text) {
        int line = 1;
        std::string cur;
        bool comment = false;
        auto flush = [&] {
            if (!cur.empty()) tokens.emplace_back(cur, line), cur.clear();
        };
        for (char ch : text) {
            if (ch == '\n') {
                flush();
                comment = false;
                ++line;
            } else if (comment) {
            } else if (ch == '#') {
                flush();
                comment = true;
            } else if (ch == ' ' || ch == '\t' || ch == '\r') {
                flush();
            } else {
                cur += ch;
            }
        }
        flush();
        last_line = line;
    }

    bool done() const { return pos >= tokens.size(); }
    int line() const { return done() ? last_line : tokens[pos].second; }
    std::string next(const char* what) {
        if (done()) throw ParseError(last_line, std::string("expected ") + what + ", got end of input");
        return tokens[pos++].first;
    }
    long long next_int(const char* what) {
        int ln = line();
        std::string t = next(what);
        try {
            std::size_t used = 0;
            long long v = std::stoll(t, &used);
            if (used != t.size()) throw std::invalid_argument(t);
            return v;
        } catch (const std::exception&) {
            throw ParseError(ln, std::string("expected ") + what + ", got '" + t + "'");
        }
    }
};

}  // namespace detail

// Format:
//   machines <m>
//   <m speed tokens `a` or `a/b`, may wrap across lines>
//   partitions <k>
//   <n_j> <p_1> ... <p_{n_j}>     (one line per partition)
inline Instance parse_instance(const std::string& text) {
    detail::TokenStream ts(text);
    int ln = ts.line();
    if (ts.next("'machines'") != "machines") throw ParseError(ln, "expected 'machines' header");
    long long m = ts.next_int("machine count");
    if (m < 1) throw ParseError(ln, "machine count must be at least 1");

    Instance ins;
    for (long long i = 0; i < m; ++i) {
        ln = ts.line();
        std::string tok = ts.next("speed token");
        auto r = rat_parse(tok);
        if (!r) throw ParseError(ln, "malformed speed token '" + tok + "'");
        if (sgn(*r) <= 0) throw ParseError(ln, "speed must be positive, got '" + tok + "'");
        ins.machine_speeds.push_back(*r);
    }

    ln = ts.line();
    if (ts.next("'partitions'") != "partitions") throw ParseError(ln, "expected 'partitions' header");
    long long k = ts.next_int("partition count");
    if (k < 1) throw ParseError(ln, "partition count must be at least 1");

    ins.unit_jobs = true;
    for (long long p = 0; p < k; ++p) {
        ln = ts.line();
        long long nj = ts.next_int("partition size");
        if (nj < 1)
            throw ParseError(ln, "partition J_" + std::to_string(p + 1) + " must be nonempty");
        std::vector<Job> jobs;
        for (long long j = 0; j < nj; ++j) {
            int jln = ts.line();
            long long pj = ts.next_int("processing time");
            if (pj < 1)
                throw ParseError(jln, "processing times must be at least 1 (partition J_" +
                                          std::to_string(p + 1) + ")");
            if (pj != 1) ins.unit_jobs = false;
            jobs.push_back({static_cast<int>(p), static_cast<int>(j), pj});
        }
        ins.partitions.push_back(std::move(jobs));
    }
    if (!ts.done()) throw ParseError(ts.line(), "unexpected trailing token '" + ts.next("") + "'");
    return ins;
}

inline std::string serialize_instance(const Instance& ins) {
    std::ostringstream out;
    out << "machines " << ins.num_machines() << "\n";
    for (int i = 0; i < ins.num_machines(); ++i)
        out << (i ? " " : "") << rat_str(ins.machine_speeds[i]);
    out << "\n";
    out << "partitions " << ins.num_partitions() << "\n";
    for (const auto& part : ins.partitions) {
        out << part.size();
        for (const Job& j : part) out << " " << j.processing;
        out << "\n";
    }
    return out.str();
}

// One line per machine: `<machine_index> <partition_index|-> <p.i pairs in execution order>`.
inline std::string serialize_schedule(const Schedule& s) {
    std::ostringstream out;
    for (int m = 0; m < static_cast<int>(s.machines.size()); ++m) {
        const auto& ma = s.machines[m];
        out << m;
        if (!ma.used()) {
            out << " -\n";
            continue;
        }
        out << " " << ma.partition;
        for (const JobRef& j : ma.jobs) out << " " << j.partition << "." << j.index;
        out << "\n";
    }
    return out.str();
}

inline Schedule parse_schedule(const std::string& text, const Instance& ins) {
    Schedule s;
    s.machines.resize(ins.num_machines());
    std::vector<char> filled(ins.num_machines(), 0);
    std::istringstream in(text);
    std::string line;
    int ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string stripped = line.substr(0, line.find('#'));
        std::istringstream fields(stripped);
        long long mi;
        if (!(fields >> mi)) continue;  // blank/comment line
        if (mi < 0 || mi >= ins.num_machines())
            throw ParseError(ln, "machine index " + std::to_string(mi) + " out of range");
        if (filled[mi]) throw ParseError(ln, "machine " + std::to_string(mi) + " listed twice");
        filled[mi] = 1;
        std::string ptok;
        if (!(fields >> ptok)) throw ParseError(ln, "missing partition token");
        MachineAssignment ma;
        if (ptok != "-") {
            try {
                ma.partition = std::stoi(ptok);
            } catch (const std::exception&) {
                throw ParseError(ln, "malformed partition token '" + ptok + "'");
            }
            std::string jtok;
            while (fields >> jtok) {
                auto dot = jtok.find('.');
                if (dot == std::string::npos)
                    throw ParseError(ln, "malformed job id '" + jtok + "' (want p.i)");
                try {
                    JobRef j{std::stoi(jtok.substr(0, dot)), std::stoi(jtok.substr(dot + 1))};
                    ma.jobs.push_back(j);
                } catch (const std::exception&) {
                    throw ParseError(ln, "malformed job id '" + jtok + "'");
                }
            }
        }
        s.machines[mi] = std::move(ma);
    }
    for (int m = 0; m < ins.num_machines(); ++m)
        if (!filled[m]) throw ParseError(ln, "machine " + std::to_string(m) + " missing from schedule");
    return s;
}

}  // namespace mpsched
