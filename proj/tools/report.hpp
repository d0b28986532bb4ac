#pragma once

// Reports written by the command-line driver: a JSON document with sorted
// keys plus aligned text tables, and a deterministic parallel loop.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

namespace grext::cli {

using Json = nlohmann::json;

enum class Status { Ok, HypothesisFailed, PropertyFailed };
const char* status_name(Status s);

struct Table {
    std::string title;
    std::vector<std::string> headers;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

struct Report {
    Report() = default;
    Report(std::string cmd, std::vector<std::string> anchor_ids)
        : command(std::move(cmd)), anchors(std::move(anchor_ids)) {}

    std::string command;
    std::vector<std::string> anchors;  // first one is the statement certified
    Status status = Status::Ok;
    Json result = Json::object();
    std::vector<Table> tables;
    /// Human-readable reasons for a non-ok status.
    std::vector<std::string> notes;

    void fail(std::string why) {
        status = Status::PropertyFailed;
        notes.push_back(std::move(why));
    }
    void hypothesis_failed(std::string why) {
        if (status == Status::Ok) status = Status::HypothesisFailed;
        notes.push_back(std::move(why));
    }
    void require(bool ok, const std::string& what) {
        if (!ok) fail(what);
    }

    Json to_json(std::uint64_t seed) const;
    std::string render_tables() const;
};

std::string render(const Table& t);

/// GREXT_THREADS, or the hardware concurrency; at least 1.
std::size_t thread_cap();
/// body(i) for i < count on up to thread_cap() threads. Results must be
/// written to slot i, so the outcome does not depend on scheduling. The first
/// exception (lowest index) is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

template <class T>
std::string join(const std::vector<T>& v, const char* sep = ",") {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += std::to_string(v[i]);
    }
    return out;
}

}  // namespace grext::cli
