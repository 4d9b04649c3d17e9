#include "kvisits/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace kvisits::io {

namespace {

struct Field {
    std::string key;
    std::vector<std::int64_t> values;
    int line;
};

struct Raw {
    std::string tag;
    std::vector<Field> fields;
};

[[noreturn]] void fail(int line, const std::string& msg) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string_view> tokens_of(std::string_view line) {
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
        line = line.substr(0, hash);
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
            ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r')
            ++j;
        if (j > i)
            out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

std::int64_t to_int(std::string_view tok, int line) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        fail(line, "expected an integer, got '" + std::string(tok) + "'");
    return v;
}

bool is_known_tag(std::string_view tag) {
    return tag == "kvisits" || tag == "varkvisits" || tag == "schedule" || tag == "pm" || tag == "rn3dm" ||
           tag == "in3dm" || tag == "tpws";
}

std::vector<Raw> lex(std::string_view text) {
    std::vector<Raw> docs;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find('\n', start), text.size());
        ++line_no;
        const auto toks = tokens_of(text.substr(start, end - start));
        start = end + 1;
        if (toks.empty())
            continue;
        if (is_known_tag(toks[0]) && toks.size() == 2) {
            if (to_int(toks[1], line_no) != format_version)
                fail(line_no, "unsupported format version " + std::string(toks[1]));
            docs.push_back({std::string(toks[0]), {}});
            continue;
        }
        if (docs.empty())
            fail(line_no, "missing format header (e.g. 'kvisits 1')");
        Field f{std::string(toks[0]), {}, line_no};
        for (std::size_t i = 1; i < toks.size(); ++i)
            f.values.push_back(to_int(toks[i], line_no));
        docs.back().fields.push_back(std::move(f));
    }
    if (docs.empty())
        fail(line_no, "empty document");
    return docs;
}

class Fields {
public:
    explicit Fields(const Raw& raw) : raw_(raw) {
        for (const Field& f : raw.fields) {
            if (f.key == "row")
                rows_.push_back(&f);
            else if (!by_key_.emplace(f.key, &f).second)
                fail(f.line, "duplicate key '" + f.key + "'");
        }
    }

    const std::vector<std::int64_t>& list(const std::string& key) {
        const auto it = by_key_.find(key);
        if (it == by_key_.end())
            fail(0, "'" + raw_.tag + "' document lacks '" + key + "'");
        seen_.emplace(key);
        return it->second->values;
    }

    std::int64_t scalar(const std::string& key) {
        const auto& v = list(key);
        if (v.size() != 1)
            fail(by_key_.at(key)->line, "'" + key + "' takes exactly one value");
        return v.front();
    }

    const std::vector<const Field*>& rows() {
        seen_.emplace("row");
        return rows_;
    }

    void finish() const {
        for (const Field& f : raw_.fields)
            if (!seen_.contains(f.key))
                fail(f.line, "unexpected key '" + f.key + "' in '" + raw_.tag + "' document");
    }

private:
    const Raw& raw_;
    std::map<std::string, const Field*> by_key_;
    std::vector<const Field*> rows_;
    std::set<std::string> seen_;
};

Document build(const Raw& raw) {
    Fields f(raw);
    Document doc = [&]() -> Document {
        if (raw.tag == "kvisits") {
            const auto k = f.scalar("k");
            return normalize(f.list("deadlines"), static_cast<int>(k));
        }
        if (raw.tag == "varkvisits") {
            const auto n = f.scalar("n");
            const auto k = f.scalar("k");
            std::vector<std::vector<Deadline>> rows;
            for (const Field* r : f.rows()) {
                if (static_cast<std::int64_t>(r->values.size()) != k)
                    fail(r->line, "row must hold k = " + std::to_string(k) + " deadlines");
                rows.push_back(r->values);
            }
            if (static_cast<std::int64_t>(rows.size()) != n)
                fail(0, "expected n = " + std::to_string(n) + " rows, got " + std::to_string(rows.size()));
            return VarKVisitsInstance(std::move(rows));
        }
        if (raw.tag == "schedule") {
            Schedule s;
            for (const std::int64_t v : f.list("entries"))
                s.entries.push_back(static_cast<NodeIndex>(v));
            return s;
        }
        if (raw.tag == "pm") {
            pm::Instance inst{f.list("D"), f.list("A"), f.list("T")};
            pm::validate(inst);
            return inst;
        }
        if (raw.tag == "rn3dm") {
            reductions::Rn3dmInstance inst{f.list("A"), f.scalar("sigma")};
            reductions::validate(inst);
            return inst;
        }
        if (raw.tag == "in3dm") {
            reductions::In3dmInstance inst{f.list("A"), f.list("T")};
            reductions::validate(inst);
            return inst;
        }
        reductions::ThresholdPinwheelInstance inst{f.list("d1"), f.list("d2"), f.list("t")};
        if (inst.d1.size() != inst.d2.size() || inst.d1.size() != inst.thresholds.size())
            fail(0, "tpws rows d1, d2, t must have equal length");
        return inst;
    }();
    f.finish();
    return doc;
}

template <class T>
T parse_as(std::string_view text, std::string_view tag) {
    Document doc = parse(text);
    if (auto* v = std::get_if<T>(&doc))
        return std::move(*v);
    throw Error(ErrorCode::ParseError, "expected a '" + std::string(tag) + "' document, got '" +
                                           std::string(tag_of(doc)) + "'");
}

void put_list(std::ostringstream& os, std::string_view key, const auto& values) {
    os << key;
    for (const auto v : values)
        os << ' ' << v;
    os << '\n';
}

} // namespace

Document parse(std::string_view text) {
    auto docs = lex(text);
    if (docs.size() != 1)
        throw Error(ErrorCode::ParseError, "expected one document, found " + std::to_string(docs.size()));
    return build(docs.front());
}

std::vector<Document> parse_all(std::string_view text) {
    std::vector<Document> out;
    for (const Raw& raw : lex(text))
        out.push_back(build(raw));
    return out;
}

KVisitsInstance parse_kvisits(std::string_view text) { return parse_as<KVisitsInstance>(text, "kvisits"); }
VarKVisitsInstance parse_var_kvisits(std::string_view text) { return parse_as<VarKVisitsInstance>(text, "varkvisits"); }
Schedule parse_schedule(std::string_view text) { return parse_as<Schedule>(text, "schedule"); }
pm::Instance parse_pm(std::string_view text) { return parse_as<pm::Instance>(text, "pm"); }
reductions::Rn3dmInstance parse_rn3dm(std::string_view text) { return parse_as<reductions::Rn3dmInstance>(text, "rn3dm"); }
reductions::In3dmInstance parse_in3dm(std::string_view text) { return parse_as<reductions::In3dmInstance>(text, "in3dm"); }
reductions::ThresholdPinwheelInstance parse_tpws(std::string_view text) {
    return parse_as<reductions::ThresholdPinwheelInstance>(text, "tpws");
}

std::string to_text(const KVisitsInstance& v) {
    std::ostringstream os;
    os << "kvisits " << format_version << "\nk " << v.k() << '\n';
    put_list(os, "deadlines", v.deadlines());
    return os.str();
}

std::string to_text(const VarKVisitsInstance& v) {
    std::ostringstream os;
    os << "varkvisits " << format_version << "\nn " << v.n() << "\nk " << v.k() << '\n';
    for (const auto& row : v.rows())
        put_list(os, "row", row);
    return os.str();
}

std::string to_text(const Schedule& v) {
    std::ostringstream os;
    os << "schedule " << format_version << '\n';
    put_list(os, "entries", v.entries);
    return os.str();
}

std::string to_text(const pm::Instance& v) {
    std::ostringstream os;
    os << "pm " << format_version << '\n';
    put_list(os, "D", v.D);
    put_list(os, "A", v.A);
    put_list(os, "T", v.T);
    return os.str();
}

std::string to_text(const reductions::Rn3dmInstance& v) {
    std::ostringstream os;
    os << "rn3dm " << format_version << "\nsigma " << v.sigma << '\n';
    put_list(os, "A", v.A);
    return os.str();
}

std::string to_text(const reductions::In3dmInstance& v) {
    std::ostringstream os;
    os << "in3dm " << format_version << '\n';
    put_list(os, "A", v.A);
    put_list(os, "T", v.T);
    return os.str();
}

std::string to_text(const reductions::ThresholdPinwheelInstance& v) {
    std::ostringstream os;
    os << "tpws " << format_version << '\n';
    put_list(os, "d1", v.d1);
    put_list(os, "d2", v.d2);
    put_list(os, "t", v.thresholds);
    return os.str();
}

std::string to_text(const Document& doc) {
    return std::visit([](const auto& v) { return to_text(v); }, doc);
}

std::string_view tag_of(const Document& doc) {
    static constexpr std::string_view tags[] = {"kvisits", "varkvisits", "schedule", "pm", "rn3dm", "in3dm", "tpws"};
    return tags[doc.index()];
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
    out << content;
}

} // namespace kvisits::io
