#pragma once

namespace discotrace {

// Version stamped on every persisted JSONL record ("schema_version").
inline constexpr int kSchemaVersion = 1;

}  // namespace discotrace
