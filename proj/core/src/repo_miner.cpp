#include "corec/repo.hpp"

#include <cstdio>
#include <sstream>

#include "corec/util.hpp"

namespace corec {

namespace {

std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s)
        if (c == '\'')
            out += "'\\''";
        else
            out += c;
    out += '\'';
    return out;
}

std::string run_git(const std::string& repo, const std::vector<std::string>& args) {
    std::string cmd = "git -C " + shell_quote(repo);
    for (const auto& a : args) cmd += ' ' + shell_quote(a);
    cmd += " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw RepositoryError("cannot launch git for " + repo);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    int status = pclose(pipe);
    if (status != 0) throw RepositoryError("git " + args[0] + " failed in " + repo);
    return out;
}

}  // namespace

const std::vector<std::string>& default_keywords() {
    static const std::vector<std::string> kw = {"bug", "fix", "error", "adjust", "failure"};
    return kw;
}

std::vector<CommitRef> all_commits(const std::string& repo_path) {
    run_git(repo_path, {"rev-parse", "--git-dir"});  // throws when not a repository
    std::string raw;
    try {
        // record separator \x01, field separator \x00; oldest commit first
        raw = run_git(repo_path, {"log", "--first-parent", "--reverse",
                                  "--format=%H%x00%P%x00%ct%x00%B%x01", "HEAD"});
    } catch (const RepositoryError&) {
        return {};  // valid repository without any commit yet
    }
    std::vector<CommitRef> out;
    std::size_t ordinal = 0, at = 0;
    while (at < raw.size()) {
        std::size_t end = raw.find('\x01', at);
        if (end == std::string::npos) break;
        std::string record = raw.substr(at, end - at);
        at = end + 1;
        while (at < raw.size() && raw[at] == '\n') ++at;
        if (!record.empty() && record.front() == '\n') record.erase(record.begin());

        std::size_t f1 = record.find('\0');
        std::size_t f2 = record.find('\0', f1 + 1);
        std::size_t f3 = record.find('\0', f2 + 1);
        if (f1 == std::string::npos || f2 == std::string::npos || f3 == std::string::npos)
            throw RepositoryError("unparsable git log output in " + repo_path);

        CommitRef c;
        c.id = record.substr(0, f1);
        std::string parents = record.substr(f1 + 1, f2 - f1 - 1);
        if (!parents.empty()) c.parent_id = parents.substr(0, parents.find(' '));
        c.timestamp = std::stoll(record.substr(f2 + 1, f3 - f2 - 1));
        c.message = record.substr(f3 + 1);
        c.ordinal = ordinal++;
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<CommitRef> scan_commits(const std::string& repo_path,
                                    const std::vector<std::string>& keywords) {
    std::vector<CommitRef> out;
    for (CommitRef& c : all_commits(repo_path))
        for (const auto& kw : keywords)
            if (contains_ci(c.message, kw)) {
                out.push_back(std::move(c));
                break;
            }
    return out;
}

std::vector<FilePair> extract_file_pairs(const std::string& repo_path, const CommitRef& commit) {
    std::vector<std::string> args = {"diff-tree", "-r", "--no-renames"};
    if (commit.parent_id)
        args.insert(args.end(), {*commit.parent_id, commit.id});
    else
        args.insert(args.end(), {"--root", commit.id});
    std::string raw = run_git(repo_path, args);

    std::vector<FilePair> out;
    std::istringstream lines(raw);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] != ':') continue;  // --root echoes the commit id
        // :oldmode newmode oldsha newsha status\tpath
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos) continue;
        std::string path = line.substr(tab + 1);
        if (!path.ends_with(".js")) continue;
        std::istringstream meta(line.substr(1, tab - 1));
        std::string old_mode, new_mode, old_sha, new_sha, status;
        meta >> old_mode >> new_mode >> old_sha >> new_sha >> status;

        auto is_absent = [](const std::string& sha) {
            return sha.find_first_not_of('0') == std::string::npos;
        };
        FilePair pair;
        pair.path = path;
        if (!is_absent(old_sha)) pair.old_source = run_git(repo_path, {"cat-file", "blob", old_sha});
        if (!is_absent(new_sha)) pair.new_source = run_git(repo_path, {"cat-file", "blob", new_sha});
        if (pair.old_source || pair.new_source) out.push_back(std::move(pair));
    }
    return out;
}

CommitEdits distill_commit(const std::string& repo_path, const CommitRef& commit) {
    CommitEdits result;
    result.commit = commit;
    for (FilePair& pair : extract_file_pairs(repo_path, commit)) {
        std::string module = module_path_of(pair.path);
        EntitySet old_set, new_set;
        bool failed = false;
        if (pair.old_source) {
            ParsedFile parsed;
            if (try_parse(std::move(*pair.old_source), parsed))
                failed = true;
            else
                old_set = extract_entities(parsed, module);
        }
        if (pair.new_source && !failed) {
            ParsedFile parsed;
            if (try_parse(std::move(*pair.new_source), parsed))
                failed = true;
            else
                new_set = extract_entities(parsed, module);
        }
        if (failed) {
            result.parse_failures.push_back(pair.path);
            continue;
        }
        auto edits = diff_entity_sets(old_set, new_set);
        result.edits.insert(result.edits.end(), edits.begin(), edits.end());
        result.old_sets.emplace(module, std::move(old_set));
        result.new_sets.emplace(module, std::move(new_set));
    }
    return result;
}

HistoryIndex build_history_index(const std::string& repo_path,
                                 const std::vector<CommitRef>& commits) {
    HistoryIndex index;
    for (const CommitRef& c : commits)
        for (const EntityEdit& e : distill_commit(repo_path, c).edits)
            index.record(c.ordinal, e.signature());
    return index;
}

}  // namespace corec
