#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "corec/distill.hpp"
#include "corec/entity.hpp"
#include "corec/history.hpp"

namespace corec {

struct CommitRef {
    std::string id;  // 40-hex commit hash
    std::string message;
    std::optional<std::string> parent_id;  // first parent; absent for the root
    std::size_t ordinal = 0;               // position in first-parent order, oldest = 0
    std::int64_t timestamp = 0;
};

struct FilePair {
    std::string path;  // repository-relative, ends in ".js"
    std::optional<std::string> old_source;  // absent when the file was added
    std::optional<std::string> new_source;  // absent when the file was deleted
};

struct RepositoryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The full first-parent chain, oldest first, with ordinals assigned.
/// Empty for a repository with no commits yet; throws RepositoryError when
/// repo_path is not a git repository.
std::vector<CommitRef> all_commits(const std::string& repo_path);

/// Commits on the first-parent chain whose message contains any keyword
/// (case-insensitive substring), in ordinal order. Empty keyword list matches
/// nothing. Throws RepositoryError when repo_path is not a git repository.
std::vector<CommitRef> scan_commits(const std::string& repo_path,
                                    const std::vector<std::string>& keywords);

/// The ".js" files added, deleted, or modified between the commit and its
/// first parent (all files of a root commit count as added). Renames surface
/// as a deletion plus an addition.
std::vector<FilePair> extract_file_pairs(const std::string& repo_path, const CommitRef& commit);

/// One commit's distilled edits: entity sets per module for both versions,
/// the entity-level edits, and the modules whose source failed to parse.
struct CommitEdits {
    CommitRef commit;
    std::map<std::string, EntitySet> old_sets;  // keyed by module path
    std::map<std::string, EntitySet> new_sets;
    std::vector<EntityEdit> edits;
    std::vector<std::string> parse_failures;  // file paths, skipped not fatal
};

CommitEdits distill_commit(const std::string& repo_path, const CommitRef& commit);

/// Runs extraction + diffing over every commit and records edited signatures.
HistoryIndex build_history_index(const std::string& repo_path,
                                 const std::vector<CommitRef>& commits);

/// The paper's commit-selection keywords.
const std::vector<std::string>& default_keywords();

}  // namespace corec
