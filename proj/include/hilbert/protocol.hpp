#pragma once

// Versioned JSON request/response session over immutable diagram snapshots.
//
// Request:  {"version": 1, "request": <kind>, "snapshot": <id, optional>, "payload": {...}}
// Response: {"version": 1, "request": <kind>, "snapshot": <id>, "ok": true, "result": {...}}
//        or {"version": 1, "request": <kind>, "snapshot": <id or null>, "ok": false,
//            "error": {"code", "exit_code", "message", "details"?}}
//
// Mutations (load_scene, insert_site, move_site, remove_site) answer with the
// id of the snapshot they create; repeating a mutation against the same base
// snapshot returns the same id. Queries answer with the snapshot they read,
// the latest one when "snapshot" is omitted.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include "hilbert/io.hpp"

namespace hilbert {

inline constexpr int kProtocolVersion = 1;

class ProtocolSession {
public:
    /// Snapshots older than the newest `capacity` are evicted.
    explicit ProtocolSession(std::size_t capacity = 256);

    /// Never throws; failures become error responses.
    std::string handle(std::string_view request);

    /// 0 until a scene is loaded.
    std::uint64_t latest() const;
    /// Throws UnknownSnapshot.
    std::shared_ptr<const VoronoiDiagram> snapshot(std::uint64_t id) const;

private:
    struct Entry {
        std::shared_ptr<const VoronoiDiagram> diagram;
        std::map<std::string, std::uint64_t> children;  // canonical mutation -> snapshot id
    };

    std::uint64_t commit(std::shared_ptr<const VoronoiDiagram> diagram);

    mutable std::mutex mutex_;
    std::size_t capacity_;
    std::uint64_t next_ = 1;
    std::map<std::uint64_t, Entry> snapshots_;
    std::map<std::string, std::uint64_t> loads_;  // canonical scene -> snapshot id
};

}  // namespace hilbert
