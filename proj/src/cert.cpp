#include "lcert/cert.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

namespace lc {

const BitString* Certificate::find(const std::string& name) const
{
    for (auto& [n, b] : fields)
        if (n == name)
            return &b;
    return nullptr;
}

const BitString& Certificate::field(const std::string& name) const
{
    auto b = find(name);
    if (!b)
        throw DecodeError("missing field " + name);
    return *b;
}

BitString Certificate::encode() const
{
    BitWriter w;
    for (auto& [n, b] : fields)
        w.bits(b);
    return w.take();
}

Certificate Certificate::decode(const BitString& bits, const std::vector<std::string>& schema)
{
    Certificate c;
    BitReader r(bits);
    for (auto& name : schema)
        c.add(name, r.bits());
    r.expect_done();
    return c;
}

bool Certificate::operator==(const Certificate& o) const { return fields == o.fields; }

EncodedAssignment encode_assignment(const CertificateAssignment& a)
{
    EncodedAssignment e;
    for (auto& [v, c] : a)
        e[v] = std::make_shared<const BitString>(c.encode());
    return e;
}

namespace {
unsigned g_jobs = 0;
}

void set_jobs(unsigned j) { g_jobs = j; }

unsigned jobs()
{
    if (g_jobs)
        return g_jobs;
    unsigned h = std::thread::hardware_concurrency();
    return h ? h : 1;
}

namespace {

// nested calls run inline on the worker that issued them
thread_local bool in_worker = false;

} // namespace

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& f)
{
    unsigned workers = in_worker ? 1 : std::min<std::size_t>(jobs(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex m;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            in_worker = true;
            for (;;) {
                auto i = next.fetch_add(1);
                if (i >= count)
                    return;
                try {
                    f(i);
                }
                catch (...) {
                    std::lock_guard<std::mutex> lock(m);
                    if (!failure)
                        failure = std::current_exception();
                }
            }
        });
    for (auto& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

void check_domain(const LabeledGraph& g, const EncodedAssignment& enc)
{
    if (enc.size() != static_cast<std::size_t>(g.size()))
        throw ContractError("assignment domain differs from V(G)");
    for (auto v : g.ids())
        if (!enc.count(v))
            throw ContractError("assignment misses vertex " + std::to_string(v));
}

Verdict run_certification_encoded(const LabeledGraph& g, const CertScheme& s, const EncodedAssignment& enc)
{
    check_domain(g, enc);
    std::vector<NodeResult> res(g.size());
    parallel_for(g.size(), [&](std::size_t i) {
        auto view = radius_view(g, g.id(static_cast<int>(i)), s.radius, &enc);
        res[i] = s.verifier(view);
    });
    Verdict v;
    for (int i = 0; i < g.size(); ++i) {
        v.reasons[g.id(i)] = res[i].reason;
        if (!res[i].accept)
            v.rejecting.insert(g.id(i));
    }
    v.accepted = v.rejecting.empty();
    return v;
}

Verdict run_certification(const LabeledGraph& g, const CertScheme& s, const CertificateAssignment* a)
{
    if (a)
        return run_certification_encoded(g, s, encode_assignment(*a));
    return run_certification_encoded(g, s, encode_assignment(s.prover(g)));
}

SizeReport measure_certificates(const CertificateAssignment& a)
{
    SizeReport r;
    for (auto& [v, c] : a) {
        auto bits = c.encode().size();
        r.max_bits = std::max(r.max_bits, bits);
        r.total_bits += bits;
        for (auto& [name, b] : c.fields) {
            r.field_max[name] = std::max(r.field_max[name], b.size());
            r.field_total[name] += b.size();
        }
    }
    return r;
}

std::string dump_assignment(const CertificateAssignment& a)
{
    std::ostringstream out;
    for (auto& [v, c] : a) {
        out << "vertex " << v << '\n';
        for (auto& [name, b] : c.fields)
            out << "  " << name << ' ' << b.to_hex() << '\n';
    }
    return out.str();
}

CertificateAssignment parse_assignment(const std::string& text)
{
    CertificateAssignment a;
    std::istringstream in(text);
    std::string line;
    Certificate* cur = nullptr;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head))
            continue;
        if (head == "vertex") {
            VertexId v;
            if (!(ls >> v))
                throw ParseError("bad vertex line " + std::to_string(line_no));
            cur = &a[v];
            continue;
        }
        std::string hex;
        if (!cur || !(ls >> hex))
            throw ParseError("bad field line " + std::to_string(line_no));
        try {
            cur->add(head, BitString::from_hex(hex));
        }
        catch (const DecodeError& e) {
            throw ParseError(std::string(e.what()) + " at line " + std::to_string(line_no));
        }
    }
    return a;
}

std::string verdict_lines(const LabeledGraph& g, const Verdict& v)
{
    std::ostringstream out;
    for (auto id : g.ids()) {
        bool rej = v.rejecting.count(id) != 0;
        auto it = v.reasons.find(id);
        out << "vertex " << id << (rej ? " REJECT " : " ACCEPT ") << (it == v.reasons.end() ? "ok" : it->second)
            << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------- fuzzing

FuzzStrategy parse_strategy(const std::string& s)
{
    if (s == "bitflip")
        return FuzzStrategy::Bitflip;
    if (s == "splice")
        return FuzzStrategy::Splice;
    if (s == "relabel")
        return FuzzStrategy::Relabel;
    if (s == "gadget-hybrid")
        return FuzzStrategy::GadgetHybrid;
    throw std::invalid_argument("unknown strategy " + s);
}

std::string strategy_name(FuzzStrategy s)
{
    switch (s) {
    case FuzzStrategy::Bitflip:
        return "bitflip";
    case FuzzStrategy::Splice:
        return "splice";
    case FuzzStrategy::Relabel:
        return "relabel";
    case FuzzStrategy::GadgetHybrid:
        return "gadget-hybrid";
    }
    return "?";
}

Corruptor::Corruptor(const LabeledGraph& g, FuzzStrategy strategy, std::uint64_t seed,
                     std::function<CertificateAssignment(std::mt19937_64&)> donor)
    : g_(g), strategy_(strategy), rng_(seed), donor_(std::move(donor))
{
}

CertificateAssignment Corruptor::next(const CertificateAssignment& honest, std::string* what)
{
    CertificateAssignment a = honest;
    if (g_.size() == 0)
        return a;
    auto pick_vertex = [&] { return g_.id(static_cast<int>(rng_() % g_.size())); };
    std::ostringstream desc;
    switch (strategy_) {
    case FuzzStrategy::Bitflip: {
        auto v = pick_vertex();
        auto& fields = a[v].fields;
        if (fields.empty())
            break;
        auto fi = rng_() % fields.size();
        auto& bits = fields[fi].second;
        int flips = 1 + static_cast<int>(rng_() % 3);
        bool everywhere = rng_() % 2 == 0;
        std::vector<std::size_t> pos;
        if (bits.size() == 0) {
            // grow an empty field instead
            bits.push_back(true);
            desc << "bitflip grow " << fields[fi].first << " at " << v;
            break;
        }
        for (int f = 0; f < flips; ++f)
            pos.push_back(rng_() % bits.size());
        // the same flips on every copy of this field model a consistent lie
        for (auto& [u, c] : a) {
            if (!everywhere && u != v)
                continue;
            auto& b = c.fields[fi].second;
            for (auto p : pos)
                if (p < b.size())
                    b.flip(p);
        }
        desc << "bitflip " << flips << " bits of " << fields[fi].first << (everywhere ? " everywhere" : " at ")
             << (everywhere ? std::string() : std::to_string(v));
        break;
    }
    case FuzzStrategy::Splice: {
        if (!donor_)
            break;
        auto other = donor_(rng_);
        int mode = static_cast<int>(rng_() % 3);
        if (mode == 0) {
            a = other;
            desc << "splice all";
        }
        else if (mode == 1) {
            auto v = pick_vertex();
            a[v] = other.at(v);
            desc << "splice vertex " << v;
        }
        else {
            auto fi = rng_() % std::max<std::size_t>(1, a.begin()->second.fields.size());
            for (auto& [u, c] : a)
                if (fi < c.fields.size())
                    c.fields[fi].second = other.at(u).fields[fi].second;
            desc << "splice field " << fi << " everywhere";
        }
        break;
    }
    case FuzzStrategy::Relabel: {
        auto x = pick_vertex(), y = pick_vertex();
        std::swap(a[x], a[y]);
        desc << "swap certificates of " << x << " and " << y;
        break;
    }
    case FuzzStrategy::GadgetHybrid: {
        if (!donor_)
            break;
        auto other = donor_(rng_);
        auto center = pick_vertex();
        int r = 1 + static_cast<int>(rng_() % 3);
        auto dist = bfs(g_, g_.index(center), r);
        for (int i = 0; i < g_.size(); ++i)
            if (dist[i] >= 0)
                a[g_.id(i)] = other.at(g_.id(i));
        desc << "hybrid ball r=" << r << " around " << center;
        break;
    }
    }
    if (what)
        *what = desc.str();
    return a;
}

FuzzReport fuzz_soundness(const LabeledGraph& g, const CertScheme& s, bool yes_instance, FuzzStrategy strategy,
                          std::uint64_t seed, std::size_t budget,
                          std::function<CertificateAssignment(std::mt19937_64&)> donor)
{
    FuzzReport rep;
    if (budget == 0)
        return rep;
    auto honest = s.prover(g);
    Corruptor c(g, strategy, seed, donor);
    for (std::size_t t = 0; t < budget; ++t) {
        std::string what;
        auto bad = c.next(honest, &what);
        auto v = run_certification_encoded(g, s, encode_assignment(bad));
        ++rep.trials;
        if (!v.accepted) {
            ++rep.rejected;
            continue;
        }
        if (!yes_instance)
            rep.violations.push_back({t, what + ": NO-instance accepted", dump_assignment(bad)});
    }
    return rep;
}

} // namespace lc
