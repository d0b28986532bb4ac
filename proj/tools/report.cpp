#include "report.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <sstream>
#include <thread>

namespace grext::cli {

const char* status_name(Status s) {
    switch (s) {
        case Status::Ok: return "ok";
        case Status::HypothesisFailed: return "hypothesis-failed";
        case Status::PropertyFailed: return "property-failed";
    }
    return "?";
}

Json Report::to_json(std::uint64_t seed) const {
    Json j;
    j["schema"] = "grext/1";
    j["command"] = command;
    j["anchor"] = anchors.empty() ? "" : anchors.front();
    j["anchors"] = anchors;
    j["status"] = status_name(status);
    j["seed"] = seed;
    j["notes"] = notes;
    j["result"] = result;
    return j;
}

std::string render(const Table& t) {
    std::size_t cols = t.headers.size();
    for (const auto& r : t.rows) cols = std::max(cols, r.size());
    std::vector<std::size_t> width(cols, 0);
    auto measure = [&](const std::vector<std::string>& r) {
        for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    };
    measure(t.headers);
    for (const auto& r : t.rows) measure(r);

    std::ostringstream out;
    auto line = [&](const std::vector<std::string>& r) {
        std::string s;
        for (std::size_t c = 0; c < cols; ++c) {
            const std::string cell = c < r.size() ? r[c] : "";
            s += cell;
            if (c + 1 < cols) s += std::string(width[c] - cell.size() + 2, ' ');
        }
        while (!s.empty() && s.back() == ' ') s.pop_back();
        out << s << '\n';
    };
    out << "== " << t.title << " ==\n";
    if (!t.headers.empty()) {
        line(t.headers);
        std::vector<std::string> rule;
        for (std::size_t c = 0; c < cols; ++c) rule.emplace_back(width[c], '-');
        line(rule);
    }
    for (const auto& r : t.rows) line(r);
    return out.str();
}

std::string Report::render_tables() const {
    std::ostringstream out;
    out << command << " [" << (anchors.empty() ? "" : anchors.front()) << "]: " << status_name(status) << '\n';
    for (const auto& n : notes) out << "  " << n << '\n';
    for (const auto& t : tables) out << '\n' << render(t);
    return out.str();
}

std::size_t thread_cap() {
    if (const char* env = std::getenv("GREXT_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<std::size_t>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    const std::size_t workers = std::min(thread_cap(), count);
    std::vector<std::exception_ptr> errors(count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i; (i = next.fetch_add(1)) < count;) {
                    try {
                        body(i);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace grext::cli
