//! Streaming encoder, received-stream model and three erasure decoders:
//!
//! * [`decode_low_delay`] — the sequential algorithm that recovers each
//!   erased step within a tolerated delay T or declares it lost and
//!   restarts behind the loss;
//! * [`decode_windowed`] — a fixed-point iteration of bounded sliding-window
//!   solves (forward, backward and restart windows all reduce to parity
//!   systems over a range of equation times);
//! * [`decode_oracle`] — the information-theoretic reference that solves the
//!   single global system with unlimited delay.
//!
//! All decoders only ever write back symbol values that are uniquely
//! determined by the parity equations they consult, so recovered values are
//! always exact.

use crate::code::{combinations, CodeFile, ConvCode};
use crate::error::{Error, Result};
use crate::gf::Element;
use crate::matrix::GfMatrix;
use crate::pattern::ErasurePattern;
use crate::poly::Poly;
use serde::{Deserialize, Serialize};

/// A transmitted stream: per scalar symbol either the received value or an
/// erasure. `terminated` means the codeword ends with the stream, so the
/// parity equations that reach past its end (against implicit zero steps)
/// are valid; a live stream only grants the equations fully supported by
/// received time steps.
#[derive(Clone, Debug)]
pub struct ReceivedStream {
    code: ConvCode,
    symbols: Vec<Option<Element>>,
    terminated: bool,
}

impl ReceivedStream {
    pub fn new(code: ConvCode, symbols: Vec<Option<Element>>, terminated: bool) -> Result<ReceivedStream> {
        let n = code.params().n();
        if symbols.len() % n != 0 {
            return Err(Error::ShapeMismatch(format!(
                "stream length {} is not a multiple of n = {n}",
                symbols.len()
            )));
        }
        Ok(ReceivedStream { code, symbols, terminated })
    }

    /// Erases the codeword according to the pattern.
    pub fn from_codeword(
        code: ConvCode,
        codeword: &[Vec<Element>],
        pattern: &ErasurePattern,
        terminated: bool,
    ) -> Result<ReceivedStream> {
        let n = code.params().n();
        if pattern.len() != codeword.len() * n {
            return Err(Error::BadPattern(format!(
                "pattern covers {} symbols, stream has {}",
                pattern.len(),
                codeword.len() * n
            )));
        }
        let mut symbols = Vec::with_capacity(pattern.len());
        for (t, step) in codeword.iter().enumerate() {
            for (c, &v) in step.iter().enumerate() {
                symbols.push(if pattern.is_erased(t * n + c) { None } else { Some(v) });
            }
        }
        ReceivedStream::new(code, symbols, terminated)
    }

    pub fn code(&self) -> &ConvCode {
        &self.code
    }

    pub fn steps(&self) -> usize {
        self.symbols.len() / self.code.params().n()
    }

    pub fn symbols(&self) -> &[Option<Element>] {
        &self.symbols
    }

    pub fn terminated(&self) -> bool {
        self.terminated
    }

    pub fn erased_indices(&self) -> Vec<usize> {
        (0..self.symbols.len()).filter(|&i| self.symbols[i].is_none()).collect()
    }

    pub fn to_json(&self) -> String {
        let file = StreamFile {
            code: CodeRef::Inline(CodeFile::from(&self.code)),
            symbols: self.symbols.iter().map(|s| s.map(|e| e.value() as u64)).collect(),
            terminated: self.terminated,
        };
        serde_json::to_string(&file).expect("stream serialization cannot fail")
    }
}

/// Reference to a code inside a stream file: inline object or a file path
/// (resolved by the caller).
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
pub enum CodeRef {
    Path(String),
    Inline(CodeFile),
}

fn default_terminated() -> bool {
    true
}

/// On-disk stream form: {"code": …, "symbols": [int or null, …]}.
#[derive(Serialize, Deserialize)]
pub struct StreamFile {
    pub code: CodeRef,
    pub symbols: Vec<Option<u64>>,
    #[serde(default = "default_terminated")]
    pub terminated: bool,
}

impl StreamFile {
    pub fn into_stream(self, code: ConvCode) -> Result<ReceivedStream> {
        let mut symbols = Vec::with_capacity(self.symbols.len());
        for s in self.symbols {
            symbols.push(match s {
                Some(v) => Some(code.field().element(v)?),
                None => None,
            });
        }
        ReceivedStream::new(code, symbols, self.terminated)
    }
}

/// A recovered symbol with its decoding delay: the number of time steps
/// between the symbol's slot and the last step its solving system consulted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecoveredSymbol {
    pub index: usize,
    pub delay: usize,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct DecodeReport {
    pub recovered: Vec<RecoveredSymbol>,
    pub lost: Vec<usize>,
    pub residual: Vec<Option<u16>>,
}

impl DecodeReport {
    pub fn recovered_indices(&self) -> Vec<usize> {
        self.recovered.iter().map(|r| r.index).collect()
    }

    pub fn is_fully_recovered(&self) -> bool {
        self.lost.is_empty()
    }

    pub fn max_delay(&self) -> Option<usize> {
        self.recovered.iter().map(|r| r.delay).max()
    }
}

/// Checks the defining parity identity on a full (terminated) step sequence.
pub fn is_codeword(code: &ConvCode, steps: &[Vec<Element>]) -> bool {
    let p = code.params();
    let f = code.field();
    let nu = p.nu();
    for t in 0..steps.len() + nu {
        for r in 0..p.n() - p.k() {
            let mut acc = f.zero();
            for i in 0..=nu {
                if t < i || t - i >= steps.len() {
                    continue;
                }
                for c in 0..p.n() {
                    acc = f.add(acc, f.mul(code.coeff(i).get(r, c), steps[t - i][c]));
                }
            }
            if !acc.is_zero() {
                return false;
            }
        }
    }
    true
}

/// Encodes a message (one k-vector per time step) into a terminated
/// codeword. Rate-1/2 codes use the generator [h_2, -h_1] directly; other
/// shapes place the message on information positions, solve the parity
/// positions step by step, and then append a zero-steering tail.
pub fn encode_stream(code: &ConvCode, message: &[Vec<Element>]) -> Result<Vec<Vec<Element>>> {
    let p = code.params();
    for step in message {
        if step.len() != p.k() {
            return Err(Error::ShapeMismatch(format!(
                "message step has {} symbols, expected k = {}",
                step.len(),
                p.k()
            )));
        }
    }
    if p.n() == 2 && p.k() == 1 {
        return Ok(encode_rate_half(code, message));
    }
    encode_systematic(code, message)
}

fn encode_rate_half(code: &ConvCode, message: &[Vec<Element>]) -> Vec<Vec<Element>> {
    let f = code.field().clone();
    let m = Poly::new(f.clone(), message.iter().map(|s| s[0]).collect());
    let h1 = code.entry_poly(0, 0);
    let h2 = code.entry_poly(0, 1);
    let v1 = h2.mul(&m);
    let v2 = h1.mul(&m).neg();
    let len = message.len() + code.params().nu();
    (0..len).map(|t| vec![v1.coeff(t), v2.coeff(t)]).collect()
}

fn encode_systematic(code: &ConvCode, message: &[Vec<Element>]) -> Result<Vec<Vec<Element>>> {
    let p = code.params();
    let (n, k, nu) = (p.n(), p.k(), p.nu());
    let f = code.field().clone();
    let h0 = code.coeff(0);

    // lexicographically first k info columns whose complement is invertible in H_0
    let all: Vec<usize> = (0..n).collect();
    let mut positions = None;
    for info in combinations(&all, k) {
        let parity: Vec<usize> = all.iter().copied().filter(|c| !info.contains(c)).collect();
        let sub = h0.select_columns(&parity);
        if !sub.det()?.is_zero() {
            positions = Some((info, parity, sub));
            break;
        }
    }
    let (info, parity, parity_block) = positions.ok_or(Error::NoParityPivot)?;

    let mut steps: Vec<Vec<Element>> = Vec::with_capacity(message.len() + nu);
    for (t, msg) in message.iter().enumerate() {
        let mut rhs = vec![f.zero(); n - k];
        for i in 1..=nu {
            if t < i {
                continue;
            }
            for r in 0..n - k {
                for c in 0..n {
                    let term = f.mul(code.coeff(i).get(r, c), steps[t - i][c]);
                    rhs[r] = f.sub(rhs[r], term);
                }
            }
        }
        for r in 0..n - k {
            for (j, &c) in info.iter().enumerate() {
                let term = f.mul(h0.get(r, c), msg[j]);
                rhs[r] = f.sub(rhs[r], term);
            }
        }
        let x = parity_block
            .solve_unique(&rhs)?
            .expect("parity block is invertible");
        let mut step = vec![f.zero(); n];
        for (j, &c) in info.iter().enumerate() {
            step[c] = msg[j];
        }
        for (j, &c) in parity.iter().enumerate() {
            step[c] = x[j];
        }
        steps.push(step);
    }

    // zero-steering tail: solve parity at times N..N+M+ν-1 for the tail steps
    let base = steps.len();
    for tail_len in nu..=2 * (nu + 1) + p.l() {
        let unknowns = tail_len * n;
        let eqs = (tail_len + nu) * (n - k);
        let mut a = GfMatrix::zeros(f.clone(), eqs, unknowns);
        let mut b = vec![f.zero(); eqs];
        for (row_t, t) in (base..base + tail_len + nu).enumerate() {
            for r in 0..n - k {
                let row = row_t * (n - k) + r;
                for i in 0..=nu {
                    if t < i {
                        continue;
                    }
                    let s = t - i;
                    if s < base {
                        for c in 0..n {
                            let term = f.mul(code.coeff(i).get(r, c), steps[s][c]);
                            b[row] = f.sub(b[row], term);
                        }
                    } else if s < base + tail_len {
                        for c in 0..n {
                            let col = (s - base) * n + c;
                            let prev = a.get(row, col);
                            a.set(row, col, f.add(prev, code.coeff(i).get(r, c)));
                        }
                    }
                }
            }
        }
        if let Some(x) = a.solve_particular(&b)? {
            for s in 0..tail_len {
                steps.push(x[s * n..(s + 1) * n].to_vec());
            }
            return Ok(steps);
        }
    }
    Err(Error::NoTermination)
}

/// Decoder state shared by the three algorithms: a working copy of the
/// symbols plus the bookkeeping for recovered/lost classification.
struct Decoder<'a> {
    code: &'a ConvCode,
    symbols: Vec<Option<Element>>,
    n_steps: usize,
    terminated: bool,
    recovered: Vec<RecoveredSymbol>,
    lost: Vec<usize>,
}

impl<'a> Decoder<'a> {
    fn new(stream: &'a ReceivedStream) -> Decoder<'a> {
        Decoder {
            code: stream.code(),
            symbols: stream.symbols().to_vec(),
            n_steps: stream.steps(),
            terminated: stream.terminated(),
            recovered: Vec::new(),
            lost: Vec::new(),
        }
    }

    /// Largest time index with a usable parity equation.
    fn max_eq_time(&self) -> isize {
        let nu = self.code.params().nu() as isize;
        if self.terminated {
            self.n_steps as isize + nu - 1
        } else {
            self.n_steps as isize - 1
        }
    }

    fn has_erasure_at_step(&self, step: usize) -> bool {
        let n = self.code.params().n();
        self.symbols[step * n..(step + 1) * n].iter().any(|s| s.is_none())
    }

    fn erased_components(&self, step: usize) -> Vec<usize> {
        let n = self.code.params().n();
        (0..n).filter(|&c| self.symbols[step * n + c].is_none()).collect()
    }

    /// Builds the parity system for equation times lo..=hi (after clipping)
    /// and returns the unknown symbol indices plus the per-unknown solution
    /// status. Unknowns are all unresolved erasures among the steps the
    /// equations touch.
    fn analyze_range(&self, lo: isize, hi: isize) -> Result<(Vec<usize>, Vec<Option<Element>>)> {
        let p = self.code.params();
        let (n, nk, nu) = (p.n(), p.n() - p.k(), p.nu() as isize);
        let f = self.code.field();
        let lo = lo.max(0);
        let hi = hi.min(self.max_eq_time());
        if lo > hi {
            return Ok((Vec::new(), Vec::new()));
        }

        let mut unknowns = Vec::new();
        let step_lo = (lo - nu).max(0) as usize;
        let step_hi = (hi.min(self.n_steps as isize - 1)) as usize;
        for step in step_lo..=step_hi {
            for c in 0..n {
                if self.symbols[step * n + c].is_none() {
                    unknowns.push(step * n + c);
                }
            }
        }
        if unknowns.is_empty() {
            return Ok((Vec::new(), Vec::new()));
        }
        let col_of = |idx: usize| unknowns.binary_search(&idx).ok();

        let rows = (hi - lo + 1) as usize * nk;
        let mut a = GfMatrix::zeros(f.clone(), rows, unknowns.len());
        let mut b = vec![f.zero(); rows];
        for tau in lo..=hi {
            for r in 0..nk {
                let row = (tau - lo) as usize * nk + r;
                for i in 0..=nu {
                    let step = tau - i;
                    if step < 0 || step >= self.n_steps as isize {
                        continue; // implicit zero step
                    }
                    let step = step as usize;
                    for c in 0..n {
                        let coeff = self.code.coeff((i) as usize).get(r, c);
                        if coeff.is_zero() {
                            continue;
                        }
                        match self.symbols[step * n + c] {
                            Some(v) => b[row] = f.sub(b[row], f.mul(coeff, v)),
                            None => {
                                let col = col_of(step * n + c).expect("unknown indexed");
                                let prev = a.get(row, col);
                                a.set(row, col, f.add(prev, coeff));
                            }
                        }
                    }
                }
            }
        }
        let solved = a.solve_components(&b)?;
        Ok((unknowns, solved))
    }

    /// Writes every determined unknown back, recording the decoding delay
    /// against the given horizon (largest step the system consulted).
    /// Returns how many symbols were written.
    fn write_determined(
        &mut self,
        unknowns: &[usize],
        solved: &[Option<Element>],
        horizon: isize,
    ) -> usize {
        let n = self.code.params().n();
        let mut wrote = 0;
        for (idx, value) in unknowns.iter().zip(solved) {
            if let Some(v) = value {
                let step = idx / n;
                let delay = (horizon.min(self.n_steps as isize - 1) - step as isize).max(0) as usize;
                self.symbols[*idx] = Some(*v);
                if !self.lost.contains(idx) {
                    self.recovered.push(RecoveredSymbol { index: *idx, delay });
                }
                wrote += 1;
            }
        }
        wrote
    }

    fn into_report(mut self) -> DecodeReport {
        for (idx, s) in self.symbols.iter().enumerate() {
            if s.is_none() && !self.lost.contains(&idx) {
                self.lost.push(idx);
            }
        }
        self.recovered.sort_by_key(|r| r.index);
        self.lost.sort_unstable();
        self.lost.dedup();
        DecodeReport {
            recovered: self.recovered,
            lost: self.lost,
            residual: self.symbols.iter().map(|s| s.map(|e| e.value())).collect(),
        }
    }
}

/// Sequential decoding with bounded delay T, following the step-by-step
/// algorithm: scan to the first erased step i, grow the window j = 0..T
/// until the erasures of v_i are uniquely determined (the window starts at
/// max(i-ν, c), where c marks the most recent loss), recover and move on;
/// if j reaches T, declare v_i's remaining erasures lost and set c = i.
///
/// With `partial` = false, v_i is written only when all of its erasures are
/// determined; with `partial` = true, every individually determined
/// component is recovered as soon as its window determines it.
pub fn decode_low_delay(
    stream: &ReceivedStream,
    t_max: usize,
    partial: bool,
) -> Result<DecodeReport> {
    let mut dec = Decoder::new(stream);
    let nu = stream.code().params().nu() as isize;
    let n = stream.code().params().n();
    let mut c: isize = -(nu + 1);
    let mut i: isize = -1;

    'scan: loop {
        // step 2: advance to the next step with unresolved erasures
        loop {
            i += 1;
            if i >= dec.n_steps as isize {
                return Ok(dec.into_report());
            }
            if dec.has_erasure_at_step(i as usize) {
                break;
            }
        }

        let mut j: isize = 0;
        loop {
            // step 4: the window covers steps t..i+j with equations at
            // times t+ν..i+j
            let t = (i - nu).max(c);
            let (unknowns, solved) = dec.analyze_range(t + nu, i + j)?;
            let vi_done = {
                let erased = dec.erased_components(i as usize);
                erased.iter().all(|&comp| {
                    let idx = i as usize * n + comp;
                    match unknowns.binary_search(&idx) {
                        Ok(pos) => solved[pos].is_some(),
                        Err(_) => false,
                    }
                })
            };
            if partial {
                dec.write_determined(&unknowns, &solved, i + j);
                if !dec.has_erasure_at_step(i as usize) {
                    continue 'scan; // step 6 -> 2
                }
            } else if vi_done {
                // step 6: recover v_i and whatever else the system pinned down
                dec.write_determined(&unknowns, &solved, i + j);
                continue 'scan;
            }
            if j == t_max as isize {
                // step 5: give up on v_i
                for comp in dec.erased_components(i as usize) {
                    dec.lost.push(i as usize * n + comp);
                }
                c = i;
                continue 'scan;
            }
            j += 1;
        }
    }
}

/// Fixed-point sliding-window decoding. Each attempt solves the parity
/// equations of a time range [t, t+j] with every unresolved erasure of
/// steps t-ν..t+j as unknowns; this single primitive subsumes forward
/// windows (known past), backward windows (the reverse code on the reversed
/// stream) and restart windows (the partial parity-check matrix). Window
/// sizes run up to the supplied level, or the detected largest j for which
/// the code is complete j-MDP. Iterates until no pass recovers anything.
pub fn decode_windowed(stream: &ReceivedStream, level: Option<usize>) -> Result<DecodeReport> {
    let j_max = match level {
        Some(j) => j,
        None => crate::minors::detect_complete_level(stream.code()).unwrap_or(0),
    };
    let nu = stream.code().params().nu() as isize;
    let mut dec = Decoder::new(stream);
    loop {
        let mut wrote = 0;
        for j in 0..=j_max as isize {
            let max_t = dec.max_eq_time();
            // forward sweep, then backward sweep over the same ranges
            for t in -nu..=max_t {
                let (unknowns, solved) = dec.analyze_range(t, t + j)?;
                wrote += dec.write_determined(&unknowns, &solved, t + j);
            }
            for t in (-nu..=max_t).rev() {
                let (unknowns, solved) = dec.analyze_range(t, t + j)?;
                wrote += dec.write_determined(&unknowns, &solved, t + j);
            }
        }
        if wrote == 0 {
            return Ok(dec.into_report());
        }
    }
}

/// Information-theoretic reference: one global system over all parity
/// equations, unlimited delay. Recovers exactly the erased symbols whose
/// columns are outside the span of the other erased columns.
pub fn decode_oracle(stream: &ReceivedStream) -> Result<DecodeReport> {
    let mut dec = Decoder::new(stream);
    let hi = dec.max_eq_time();
    let (unknowns, solved) = dec.analyze_range(0, hi)?;
    dec.write_determined(&unknowns, &solved, hi);
    Ok(dec.into_report())
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum DecodeAlgo {
    LowDelay,
    Windowed,
    Oracle,
}

impl std::str::FromStr for DecodeAlgo {
    type Err = Error;
    fn from_str(s: &str) -> Result<DecodeAlgo> {
        match s {
            "low-delay" => Ok(DecodeAlgo::LowDelay),
            "windowed" => Ok(DecodeAlgo::Windowed),
            "oracle" => Ok(DecodeAlgo::Oracle),
            other => Err(Error::InvalidParameter(format!("unknown algorithm {other:?}"))),
        }
    }
}

pub fn decode(stream: &ReceivedStream, algo: DecodeAlgo, delay: usize, partial: bool, level: Option<usize>) -> Result<DecodeReport> {
    match algo {
        DecodeAlgo::LowDelay => decode_low_delay(stream, delay, partial),
        DecodeAlgo::Windowed => decode_windowed(stream, level),
        DecodeAlgo::Oracle => decode_oracle(stream),
    }
}

#[derive(Clone, Debug)]
pub struct SimulationConfig {
    pub message_steps: usize,
    pub trials: u64,
    pub seed: u64,
    pub pattern: crate::pattern::PatternSpec,
    pub algo: DecodeAlgo,
    pub delay: usize,
    pub partial: bool,
    pub level: Option<usize>,
}

/// Aggregate recovery statistics over repeated encode → erase → decode runs
/// with random messages. `value_mismatches` counts recovered symbols whose
/// value differs from the transmitted codeword; it must be zero.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SimReport {
    pub trials: u64,
    pub message_steps: usize,
    pub emitted_steps: usize,
    pub erased: u64,
    pub recovered: u64,
    pub lost: u64,
    pub value_mismatches: u64,
    pub max_delay: Option<usize>,
    pub mean_delay: f64,
}

pub fn simulate(code: &ConvCode, cfg: &SimulationConfig) -> Result<SimReport> {
    let f = code.field().clone();
    let p = code.params();
    let mut rng = crate::rng::SplitMix64::new(cfg.seed);
    let level = match cfg.algo {
        DecodeAlgo::Windowed => {
            Some(cfg.level.or_else(|| crate::minors::detect_complete_level(code)).unwrap_or(0))
        }
        _ => cfg.level,
    };
    let mut report = SimReport {
        trials: cfg.trials,
        message_steps: cfg.message_steps,
        emitted_steps: 0,
        erased: 0,
        recovered: 0,
        lost: 0,
        value_mismatches: 0,
        max_delay: None,
        mean_delay: 0.0,
    };
    let mut delay_sum = 0u64;
    for _ in 0..cfg.trials {
        let message: Vec<Vec<Element>> = (0..cfg.message_steps)
            .map(|_| {
                (0..p.k())
                    .map(|_| f.element(rng.below(f.q())).expect("in range"))
                    .collect()
            })
            .collect();
        let steps = encode_stream(code, &message)?;
        report.emitted_steps = steps.len();
        let pattern = crate::pattern::gen_pattern(&cfg.pattern, steps.len() * p.n(), rng.next_u64())?;
        report.erased += pattern.erased_count() as u64;
        let stream = ReceivedStream::from_codeword(code.clone(), &steps, &pattern, true)?;
        let decoded = decode(&stream, cfg.algo, cfg.delay, cfg.partial, level)?;
        report.lost += decoded.lost.len() as u64;
        for r in &decoded.recovered {
            report.recovered += 1;
            delay_sum += r.delay as u64;
            report.max_delay = Some(report.max_delay.map_or(r.delay, |m| m.max(r.delay)));
            let expected = steps[r.index / p.n()][r.index % p.n()];
            if decoded.residual[r.index] != Some(expected.value()) {
                report.value_mismatches += 1;
            }
        }
    }
    if report.recovered > 0 {
        report.mean_delay = delay_sum as f64 / report.recovered as f64;
    }
    Ok(report)
}
