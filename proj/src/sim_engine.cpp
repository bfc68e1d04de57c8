#include "raidsim/sim_engine.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <queue>

#include "raidsim/errors.hpp"

namespace raidsim {

std::string_view to_string(DuCause c) {
    switch (c) {
        case DuCause::ADU: return "ADU";
        case DuCause::SDU: return "SDU";
        case DuCause::SurvivableRecovery: return "survivable-DL-recovery";
    }
    return "?";
}

std::string_view to_string(DlCause c) { return c == DlCause::ADL ? "ADL" : "SDL"; }

std::uint64_t IncidentLog::count(DlCause c) const {
    return static_cast<std::uint64_t>(
        std::count_if(dl_incidents.begin(), dl_incidents.end(), [c](const DlIncident& d) { return d.cause == c; }));
}

std::uint64_t IncidentLog::episodes(DuCause c) const {
    return static_cast<std::uint64_t>(std::count_if(du_incidents.begin(), du_incidents.end(), [c](const DuIncident& d) {
        return d.cause == c && d.opens_episode;
    }));
}

std::uint64_t count_ddf_compatible(const IncidentLog& log, CompatMode mode) {
    const std::uint32_t want = mode == CompatMode::Raid5 ? 1 : 2;
    if (log.code_r != want && !(log.dl_incidents.empty() && log.code_r == 0))
        throw ParameterError("incident log comes from a code with " + std::to_string(log.code_r) +
                             " row parities, mode needs " + std::to_string(want));
    return log.dl_incidents.size();
}

namespace {

constexpr std::uint32_t kSwapLane = 1000;
constexpr std::uint32_t kScrubUniformLane = 2000;

struct LseRecord {
    std::uint64_t stripe;
    std::uint32_t device;
    bool alive;
};

struct Slot {
    DeviceStatus status = DeviceStatus::Operational;
    std::uint64_t fail_token = 0;
    std::uint64_t rebuild_token = 0;
    std::uint64_t her_token = 0;
    std::uint64_t crash_token = 0;
    std::vector<std::uint32_t> lses;  // live LSE ids; stashed while the disk is out
    bool awaiting_replacement = false;
    bool on_spare = false;
    double pass_start = 0.0;  // renewal-pass scrub boundaries
    double pass_end = -1.0;
};

struct OpenRecovery {
    double start;
    double bytes;
    bool open;
};

struct Later {
    bool operator()(const Event& a, const Event& b) const noexcept {
        if (a.time != b.time) return a.time > b.time;
        return a.seq > b.seq;
    }
};

class Simulator {
public:
    Simulator(const DiskModel& disk, const CodeConfig& code, const PolicyConfig& policy, double mission,
              std::uint64_t seed, std::uint64_t array_index, const SimOptions& options)
        : disk_(disk), code_(code), policy_(policy), mission_(mission), seed_(seed), index_(array_index),
          options_(options), state_(ArrayState::healthy(code)), slots_(code.n),
          stripe_count_(std::max<std::uint64_t>(1, disk.capacity / code.chunk_size)),
          stripe_bytes_(code.stripe_bytes()),
          usable_(usable_capacity(code, disk, 1)),
          spares_(policy.spare ? 1 : 0),
          p_(policy.hep), q_(policy.error_draw_probability()) {
        log_.usable_bytes = usable_;
        log_.mission = mission;
        log_.code_r = code.r;
    }

    IncidentLog run() {
        push(mission_, EventKind::MissionEnd, 0, 0);
        for (std::uint32_t d = 0; d < code_.n; ++d) {
            schedule_failure(d);
            schedule_next_lse(d);
        }
        while (!heap_.empty()) {
            const Event e = heap_.top();
            heap_.pop();
            if (e.time > mission_) break;
            now_ = e.time;
            ++log_.counters.events;
            if (e.kind == EventKind::MissionEnd) break;
            stripe_only_ = false;
            if (dispatch(e)) {
                if (stripe_only_ && df_ == 0 && he_ == 0 && !adu_open_ && sdu_bytes_ == 0.0) evaluate_stripe();
                else evaluate();
                if (options_.verify_classification) verify();
            }
            if (log_.absorbed) break;
        }
        finish(log_.absorbed ? now_ : mission_);
        return std::move(log_);
    }

private:
    // ---- randomness -------------------------------------------------------------------
    RandomStream& stream(Purpose p, std::uint32_t lane) {
        const std::uint32_t width = 2 * code_.n + 1;
        std::uint32_t slot;
        if (lane < code_.n) slot = lane;
        else if (lane == kSwapLane) slot = code_.n;
        else slot = code_.n + 1 + (lane - kScrubUniformLane);
        const std::size_t idx = (static_cast<std::size_t>(p) - 1) * width + slot;
        if (idx >= streams_.size()) streams_.resize(idx + 1);
        auto& entry = streams_[idx];
        if (!entry) entry.emplace(seed_, index_, p, lane);
        return *entry;
    }
    double draw(const WeibullParams& w, Purpose p, std::uint32_t lane) { return sample_weibull(w, stream(p, lane)); }

    // ---- queue ------------------------------------------------------------------------
    void push(double t, EventKind k, std::uint32_t device, std::uint64_t token) {
        if (t > mission_ && k != EventKind::MissionEnd) return;
        heap_.push(Event{t, seq_++, k, device, token});
    }
    std::uint64_t next_token() { return ++token_counter_; }

    // ---- helpers ----------------------------------------------------------------------
    std::uint32_t df() const { return df_; }
    std::uint32_t he() const { return he_; }
    bool available() const { return df_ + he_ <= code_.r; }
    bool any_df() const { return df_ > 0; }

    std::vector<std::uint32_t>& counts_for(std::uint64_t stripe) {
        auto [it, inserted] = state_.lse_counts.try_emplace(stripe);
        if (inserted) it->second.assign(code_.n, 0);
        return it->second;
    }
    void drop_count(std::uint64_t stripe, std::uint32_t device) {
        auto it = state_.lse_counts.find(stripe);
        if (it == state_.lse_counts.end()) return;
        if (it->second[device] > 0) --it->second[device];
        if (std::all_of(it->second.begin(), it->second.end(), [](auto c) { return c == 0; }))
            state_.lse_counts.erase(it);
    }

    void schedule_failure(std::uint32_t d) {
        slots_[d].fail_token = next_token();
        push(now_ + draw(disk_.d_df, Purpose::DiskFailure, d), EventKind::DiskFail, d, slots_[d].fail_token);
    }
    void schedule_next_lse(std::uint32_t d) {
        push(now_ + draw(disk_.d_lse, Purpose::LseArrival, d), EventKind::LseArrive, d, 0);
    }

    double removal_time(std::uint32_t d) {
        if (policy_.scrub_model == ScrubModel::PerLse) return now_ + draw(disk_.d_scrub, Purpose::Scrub, d);
        Slot& s = slots_[d];
        if (s.pass_end < 0.0) s.pass_end = draw(disk_.d_scrub, Purpose::Scrub, d);
        while (s.pass_start < now_) {
            s.pass_start = s.pass_end;
            s.pass_end += draw(disk_.d_scrub, Purpose::Scrub, d);
        }
        return sample_uniform(s.pass_start, s.pass_end, stream(Purpose::Scrub, kScrubUniformLane + d));
    }

    void clear_lses(std::uint32_t d) {
        Slot& s = slots_[d];
        for (std::uint32_t id : s.lses) {
            lses_[id].alive = false;
            if (s.status == DeviceStatus::Operational) drop_count(lses_[id].stripe, d);
        }
        s.lses.clear();
    }

    void remove_lse(std::uint32_t id) {
        LseRecord& rec = lses_[id];
        rec.alive = false;
        Slot& s = slots_[rec.device];
        auto it = std::find(s.lses.begin(), s.lses.end(), id);
        if (it != s.lses.end()) {
            *it = s.lses.back();
            s.lses.pop_back();
        }
        if (s.status == DeviceStatus::Operational) drop_count(rec.stripe, rec.device);
    }

    void clear_stripe(std::uint64_t stripe) {
        for (std::uint32_t d = 0; d < code_.n; ++d) {
            auto& v = slots_[d].lses;
            for (std::size_t i = 0; i < v.size();) {
                if (lses_[v[i]].stripe == stripe) {
                    lses_[v[i]].alive = false;
                    v[i] = v.back();
                    v.pop_back();
                } else {
                    ++i;
                }
            }
        }
        state_.lse_counts.erase(stripe);
    }

    static bool erased(DeviceStatus st) { return st == DeviceStatus::Failed || st == DeviceStatus::Rebuilding; }
    void set_status(std::uint32_t d, DeviceStatus st) {
        const DeviceStatus old = slots_[d].status;
        df_ += erased(st);
        df_ -= erased(old);
        he_ += st == DeviceStatus::WronglyRemoved;
        he_ -= old == DeviceStatus::WronglyRemoved;
        slots_[d].status = st;
        state_.device_status[d] = st;
    }

    // ---- rebuild ----------------------------------------------------------------------
    void enqueue_rebuild(std::uint32_t d) {
        rebuild_queue_.push_back(d);
        try_start_rebuild();
    }
    void try_start_rebuild() {
        if (active_rebuild_ >= 0 || rebuild_queue_.empty() || adu_open_ || !available()) return;
        const std::uint32_t d = rebuild_queue_.front();
        rebuild_queue_.pop_front();
        active_rebuild_ = static_cast<int>(d);
        slots_[d].rebuild_token = next_token();
        push(now_ + draw(disk_.d_rec, Purpose::Rebuild, d), EventKind::RebuildComplete, d, slots_[d].rebuild_token);
    }
    void abort_active_rebuild() {
        if (active_rebuild_ < 0) return;
        const auto d = static_cast<std::uint32_t>(active_rebuild_);
        slots_[d].rebuild_token = 0;
        rebuild_queue_.push_front(d);
        active_rebuild_ = -1;
    }
    void forget_rebuild(std::uint32_t d) {
        if (active_rebuild_ == static_cast<int>(d)) {
            active_rebuild_ = -1;
        } else {
            rebuild_queue_.erase(std::remove(rebuild_queue_.begin(), rebuild_queue_.end(), d), rebuild_queue_.end());
        }
        slots_[d].rebuild_token = 0;
    }

    // ---- replacement ------------------------------------------------------------------
    void ensure_visit() {
        if (visit_pending_) return;
        visit_pending_ = true;
        visit_token_ = next_token();
        push(now_ + draw(policy_.d_dr, Purpose::Repair, 0), EventKind::ReplaceComplete, 0, visit_token_);
    }
    void cancel_visit() {
        visit_pending_ = false;
        visit_token_ = 0;
    }

    void install_new_disk(std::uint32_t d) {
        Slot& s = slots_[d];
        s.awaiting_replacement = false;
        set_status(d, DeviceStatus::Rebuilding);
        schedule_failure(d);
        enqueue_rebuild(d);
    }

    void fail_device(std::uint32_t d) {
        Slot& s = slots_[d];
        clear_lses(d);
        if (s.status == DeviceStatus::Rebuilding) forget_rebuild(d);
        s.fail_token = 0;
        s.her_token = 0;
        s.crash_token = 0;
        if (s.on_spare) {
            // the spare died mid-rebuild; the disk it replaced still has to be pulled
            s.on_spare = false;
            ++swaps_pending_;
        }
        if (spares_ > 0) {
            --spares_;
            s.on_spare = true;
            s.awaiting_replacement = false;
            set_status(d, DeviceStatus::Rebuilding);
            schedule_failure(d);
            enqueue_rebuild(d);
        } else {
            set_status(d, DeviceStatus::Failed);
            s.awaiting_replacement = true;
            ensure_visit();
        }
    }

    /// One replacement attempt; returns true when the agent erred.
    bool attempt_errs(std::uint32_t lane) {
        ++log_.counters.replacements;
        RandomStream& hs = stream(Purpose::HumanError, lane);
        const double u = hs.next_uniform();
        // Draws that follow an error are keyed by the attempt, so runs that differ only in hep
        // see identical consequences for the same attempt.
        attempt_key_ = (static_cast<std::uint64_t>(lane) << 32) | hs.counter();
        const bool someone_to_remove = std::any_of(slots_.begin(), slots_.end(), [](const Slot& s) {
            return s.status == DeviceStatus::Operational;
        });
        if (!someone_to_remove) return false;
        const bool err = u < q_;
        if (p_ != q_) weight_ *= err ? p_ / q_ : (1.0 - p_) / (1.0 - q_);
        return err;
    }

    void remove_wrong_disk() {
        std::vector<std::uint32_t> ops;
        for (std::uint32_t d = 0; d < code_.n; ++d)
            if (slots_[d].status == DeviceStatus::Operational) ops.push_back(d);
        const double u = RandomStream(seed_, index_, Purpose::WrongPick, attempt_key_).next_uniform();
        const std::uint32_t w = ops[std::min<std::size_t>(ops.size() - 1, static_cast<std::size_t>(u * ops.size()))];
        Slot& s = slots_[w];
        for (std::uint32_t id : s.lses) drop_count(lses_[id].stripe, w);
        set_status(w, DeviceStatus::WronglyRemoved);
        ++log_.counters.human_errors;
        s.her_token = next_token();
        RandomStream her(seed_, index_, Purpose::HumanRecovery, attempt_key_);
        push(now_ + sample_weibull(policy_.d_her, her), EventKind::HumanErrorRecovered, w, s.her_token);
        s.crash_token = next_token();
        RandomStream crash(seed_, index_, Purpose::Crash, attempt_key_);
        push(now_ + sample_weibull(policy_.d_crash, crash), EventKind::WrongDiskCrashed, w, s.crash_token);
    }

    void complete_pending_tasks() {
        for (std::uint32_t d = 0; d < code_.n; ++d)
            if (slots_[d].status == DeviceStatus::Failed && slots_[d].awaiting_replacement) install_new_disk(d);
        if (swaps_pending_ > 0) {
            spares_ = 1;
            swaps_pending_ = 0;
        }
        cancel_visit();
    }

    bool on_visit(const Event& e) {
        if (!visit_pending_ || e.token != visit_token_) return false;
        cancel_visit();
        bool pending = false;
        bool changed = false;
        for (std::uint32_t d = 0; d < code_.n; ++d) {
            if (slots_[d].status != DeviceStatus::Failed || !slots_[d].awaiting_replacement) continue;
            changed = true;
            if (attempt_errs(d)) {
                remove_wrong_disk();
                pending = true;
            } else {
                install_new_disk(d);
            }
        }
        const std::uint32_t swaps = swaps_pending_;
        for (std::uint32_t k = 0; k < swaps; ++k) {
            changed = true;
            if (attempt_errs(kSwapLane)) {
                remove_wrong_disk();
                pending = true;
            } else {
                --swaps_pending_;
                spares_ = 1;
            }
        }
        // The agent returns only while the array still serves data; an outage is
        // resolved by the human-error recovery instead.
        if (pending && available()) ensure_visit();
        return changed;
    }

    // ---- event handlers -----------------------------------------------------------------
    bool dispatch(const Event& e) {
        switch (e.kind) {
            case EventKind::DiskFail: {
                Slot& s = slots_[e.device];
                if (e.token != s.fail_token) return false;
                ++log_.counters.disk_failures;
                if (s.status == DeviceStatus::WronglyRemoved) ++log_.counters.crashes;
                fail_device(e.device);
                return true;
            }
            case EventKind::LseArrive: return on_lse(e.device);
            case EventKind::ScrubComplete:
                if (!lses_[e.token].alive) return false;
                remove_lse(static_cast<std::uint32_t>(e.token));
                stripe_only_ = true;
                touched_stripe_ = lses_[e.token].stripe;
                return true;
            case EventKind::ReplaceComplete: return on_visit(e);
            case EventKind::RebuildComplete: {
                Slot& s = slots_[e.device];
                if (e.token != s.rebuild_token || active_rebuild_ != static_cast<int>(e.device)) return false;
                s.rebuild_token = 0;
                active_rebuild_ = -1;
                set_status(e.device, DeviceStatus::Operational);
                if (s.on_spare) {
                    s.on_spare = false;
                    ++swaps_pending_;
                    ensure_visit();
                }
                try_start_rebuild();
                return true;
            }
            case EventKind::HumanErrorRecovered: {
                Slot& s = slots_[e.device];
                if (e.token != s.her_token || s.status != DeviceStatus::WronglyRemoved) return false;
                s.her_token = 0;
                s.crash_token = 0;
                set_status(e.device, DeviceStatus::Operational);
                for (std::uint32_t id : s.lses) ++counts_for(lses_[id].stripe)[e.device];
                complete_pending_tasks();
                try_start_rebuild();
                return true;
            }
            case EventKind::WrongDiskCrashed: {
                Slot& s = slots_[e.device];
                if (e.token != s.crash_token || s.status != DeviceStatus::WronglyRemoved) return false;
                ++log_.counters.crashes;
                fail_device(e.device);
                return true;
            }
            case EventKind::BackupRecoveryComplete:
            case EventKind::SectorBackupRecoveryComplete:
                close_recovery(e.token, now_);
                return false;
            case EventKind::MissionEnd: return false;
        }
        return false;
    }

    bool on_lse(std::uint32_t d) {
        schedule_next_lse(d);
        Slot& s = slots_[d];
        const double u = stream(Purpose::LseStripe, d).next_uniform();
        if (s.status != DeviceStatus::Operational) {
            ++log_.counters.lse_dropped;
            return false;
        }
        const auto stripe = std::min<std::uint64_t>(stripe_count_ - 1, static_cast<std::uint64_t>(u * stripe_count_));
        auto& counts = counts_for(stripe);
        if (counts[d] >= code_.m) {
            ++log_.counters.lse_dropped;
            return false;
        }
        ++counts[d];
        if (policy_.ignore_lse_during_rebuild && any_df()) {
            const std::uint64_t total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
            if (total > max_correctable_lse(counts, code_, df())) {
                drop_count(stripe, d);
                ++log_.counters.lse_dropped;
                return false;
            }
        }
        const auto id = static_cast<std::uint32_t>(lses_.size());
        lses_.push_back(LseRecord{stripe, d, true});
        s.lses.push_back(id);
        ++log_.counters.lse_arrivals;
        push(removal_time(d), EventKind::ScrubComplete, d, id);
        stripe_only_ = true;
        touched_stripe_ = stripe;
        return true;
    }

    // ---- accounting -----------------------------------------------------------------------
    void record_dl(DlCause cause, double lost) {
        double rec = 0.0;
        if (policy_.dos > 0.0) {
            const bool whole = cause == DlCause::ADL;
            rec = whole ? draw(policy_.d_br, Purpose::BackupRecovery, 0)
                        : draw(policy_.d_sbr, Purpose::SectorRecovery, 0);
            recoveries_.push_back(OpenRecovery{now_, policy_.dos * lost, true});
            push(now_ + rec, whole ? EventKind::BackupRecoveryComplete : EventKind::SectorBackupRecoveryComplete, 0,
                 recoveries_.size() - 1);
        }
        log_.dl_incidents.push_back(DlIncident{now_, lost, cause, rec});
    }

    void close_recovery(std::uint64_t idx, double t) {
        OpenRecovery& r = recoveries_[idx];
        if (!r.open) return;
        r.open = false;
        if (t > r.start && r.bytes > 0.0)
            log_.du_incidents.push_back(DuIncident{r.start, t, r.bytes, DuCause::SurvivableRecovery, true, {}});
    }

    void open_adu() {
        adu_open_ = true;
        adu_start_ = now_;
        if (options_.record_snapshots) adu_snapshot_ = state_;
        abort_active_rebuild();
    }
    void close_adu(double t) {
        adu_open_ = false;
        if (t > adu_start_)
            log_.du_incidents.push_back(DuIncident{adu_start_, t, usable_, DuCause::ADU, true,
                                                   std::move(adu_snapshot_)});
        adu_snapshot_.reset();
    }

    void set_sdu_bytes(double bytes, double t) {
        if (bytes == sdu_bytes_) return;
        bool next_opens = sdu_bytes_ == 0.0;
        if (sdu_bytes_ > 0.0) {
            if (t > sdu_start_) {
                log_.du_incidents.push_back(DuIncident{sdu_start_, t, sdu_bytes_, DuCause::SDU, sdu_opens_,
                                                       std::move(sdu_snapshot_)});
            } else {
                next_opens = sdu_opens_;  // zero-length segment: the episode starts with the next one
            }
        }
        sdu_snapshot_.reset();
        sdu_bytes_ = bytes;
        sdu_start_ = t;
        sdu_opens_ = next_opens;
        if (bytes > 0.0 && options_.record_snapshots) sdu_snapshot_ = state_;
    }

    void close_du(double t) {
        if (adu_open_) close_adu(t);
        set_sdu_bytes(0.0, t);
    }

    void reset_array() {
        for (std::uint32_t d = 0; d < code_.n; ++d) {
            Slot& s = slots_[d];
            for (std::uint32_t id : s.lses) lses_[id].alive = false;
            s.lses.clear();
            s.rebuild_token = s.her_token = s.crash_token = 0;
            s.awaiting_replacement = false;
            s.on_spare = false;
            const bool replaced = s.status != DeviceStatus::Operational;
            set_status(d, DeviceStatus::Operational);
            if (replaced) schedule_failure(d);
        }
        state_.lse_counts.clear();
        rebuild_queue_.clear();
        active_rebuild_ = -1;
        cancel_visit();
        swaps_pending_ = 0;
        spares_ = policy_.spare ? 1 : 0;
    }

    void evaluate() {
        Classification cls = classify_detailed(state_);
        if (cls.conditions.has(Condition::ADL)) {
            record_dl(DlCause::ADL, usable_);
            close_du(now_);
            if (policy_.dos == 0.0) {
                log_.absorbed = true;
                return;
            }
            reset_array();
            return;
        }
        if (!cls.lost_stripes.empty()) {
            record_dl(DlCause::SDL, static_cast<double>(cls.lost_stripes.size()) * stripe_bytes_);
            for (std::uint64_t stripe : cls.lost_stripes) clear_stripe(stripe);
            cls = classify_detailed(state_);
        }
        const bool adu = cls.conditions.has(Condition::ADU);
        if (adu && !adu_open_) {
            open_adu();
        } else if (!adu && adu_open_) {
            close_adu(now_);
            try_start_rebuild();
        }
        set_sdu_bytes(static_cast<double>(cls.unavailable_stripes.size()) * stripe_bytes_, now_);
    }

    // With every device operational only the touched stripe can have become lost;
    // all other stripes were recoverable after the previous evaluation.
    void evaluate_stripe() {
        auto it = state_.lse_counts.find(touched_stripe_);
        if (it == state_.lse_counts.end()) return;
        const auto& counts = it->second;
        const std::uint64_t total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
        if (total <= max_correctable_lse(counts, code_, 0)) return;
        record_dl(DlCause::SDL, stripe_bytes_);
        clear_stripe(touched_stripe_);
    }

    void verify() const {
        const Classification c = classify_detailed(state_);
        const bool adu = c.conditions.has(Condition::ADU);
        const double sdu = static_cast<double>(c.unavailable_stripes.size()) * stripe_bytes_;
        if (log_.absorbed) return;
        if (!c.lost_stripes.empty() || c.conditions.has(Condition::ADL) || adu != adu_open_ || sdu != sdu_bytes_)
            throw std::logic_error("incremental classification diverged from classify()");
        if (df_ != count_df(state_) || he_ != count_he(state_))
            throw std::logic_error("device counters diverged");
    }

    void finish(double t) {
        close_du(t);
        for (std::size_t i = 0; i < recoveries_.size(); ++i) close_recovery(i, std::min(t, mission_));
        log_.weight = weight_;
    }

    const DiskModel& disk_;
    const CodeConfig& code_;
    const PolicyConfig& policy_;
    double mission_;
    std::uint64_t seed_;
    std::uint64_t index_;
    SimOptions options_;

    ArrayState state_;
    std::vector<Slot> slots_;
    std::vector<LseRecord> lses_;
    std::vector<OpenRecovery> recoveries_;
    std::vector<std::optional<RandomStream>> streams_;
    std::priority_queue<Event, std::vector<Event>, Later> heap_;
    std::deque<std::uint32_t> rebuild_queue_;
    int active_rebuild_ = -1;

    std::uint64_t stripe_count_;
    double stripe_bytes_;
    double usable_;
    std::uint32_t spares_;
    std::uint32_t swaps_pending_ = 0;
    bool visit_pending_ = false;
    std::uint64_t visit_token_ = 0;

    std::uint32_t df_ = 0;
    std::uint32_t he_ = 0;
    // Set by handlers that changed a single stripe's counts without touching device status.
    bool stripe_only_ = false;
    std::uint64_t touched_stripe_ = 0;

    double p_, q_;
    double weight_ = 1.0;
    std::uint64_t attempt_key_ = 0;
    double now_ = 0.0;
    std::uint64_t seq_ = 0;
    std::uint64_t token_counter_ = 0;

    bool adu_open_ = false;
    double adu_start_ = 0.0;
    std::optional<ArrayState> adu_snapshot_;
    double sdu_bytes_ = 0.0;
    double sdu_start_ = 0.0;
    bool sdu_opens_ = true;
    std::optional<ArrayState> sdu_snapshot_;

    IncidentLog log_;
};

}  // namespace

IncidentLog simulate_array(const DiskModel& disk, const CodeConfig& code, const PolicyConfig& policy, double mission,
                           std::uint64_t seed, std::uint64_t array_index, const SimOptions& options) {
    return Simulator(disk, code, policy, mission, seed, array_index, options).run();
}

}  // namespace raidsim
