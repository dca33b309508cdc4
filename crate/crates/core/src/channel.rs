//! Channel parameterisations and transmitter-side descriptions.
//!
//! The Gaussian model is the standard-form two-user interference channel with
//! an external eavesdropper: unit direct gains, unit noise variance at every
//! output, cross gains `c12`/`c21` and eavesdropper gains `c1e`/`c2e` (all
//! amplitude-squared). Each transmitter splits its signal into a common part
//! (decoded by both receivers), a self part (decoded by its own receiver
//! only), an other part (decoded by the non-intended receiver only) and a
//! jamming part (decoded by nobody). Time sharing is an explicit list of
//! weighted power states.

use serde::Serialize;
use thiserror::Error;

pub const NORMALISATION_TOL: f64 = 1e-12;
pub const BUDGET_TOL: f64 = 1e-9;

/// Default cap on discrete alphabet sizes, keeping joint enumeration small.
pub const DEFAULT_ALPHABET_CAP: usize = 4;

// ---------------------------------------------------------------------------
// Users and signal components
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum User {
    One,
    Two,
}

impl User {
    pub fn index(self) -> usize {
        match self {
            User::One => 0,
            User::Two => 1,
        }
    }

    pub fn other(self) -> User {
        match self {
            User::One => User::Two,
            User::Two => User::One,
        }
    }
}

impl std::fmt::Display for User {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.index() + 1)
    }
}

/// The six codebook-bearing signal components.
///
/// Jamming parts carry no codebook: they enter power states and noise terms
/// but never appear in a rate vector, so they are not listed here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SignalComponent {
    C1,
    S1,
    O1,
    C2,
    S2,
    O2,
}

impl SignalComponent {
    pub const ALL: [SignalComponent; 6] = [
        SignalComponent::C1,
        SignalComponent::S1,
        SignalComponent::O1,
        SignalComponent::C2,
        SignalComponent::S2,
        SignalComponent::O2,
    ];

    pub fn index(self) -> usize {
        match self {
            SignalComponent::C1 => 0,
            SignalComponent::S1 => 1,
            SignalComponent::O1 => 2,
            SignalComponent::C2 => 3,
            SignalComponent::S2 => 4,
            SignalComponent::O2 => 5,
        }
    }

    pub fn from_index(i: usize) -> SignalComponent {
        Self::ALL[i]
    }

    pub fn user(self) -> User {
        match self {
            SignalComponent::C1 | SignalComponent::S1 | SignalComponent::O1 => User::One,
            _ => User::Two,
        }
    }

    /// Whether the component carries a secret-message rate (common and self
    /// parts do; other parts carry randomisation only).
    pub fn bears_secrecy_rate(self) -> bool {
        !matches!(self, SignalComponent::O1 | SignalComponent::O2)
    }

    pub fn label(self) -> &'static str {
        match self {
            SignalComponent::C1 => "C1",
            SignalComponent::S1 => "S1",
            SignalComponent::O1 => "O1",
            SignalComponent::C2 => "C2",
            SignalComponent::S2 => "S2",
            SignalComponent::O2 => "O2",
        }
    }
}

/// A set of signal components, stored as a 6-bit mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentSet(u8);

impl ComponentSet {
    pub const EMPTY: ComponentSet = ComponentSet(0);
    pub const FULL: ComponentSet = ComponentSet(0b11_1111);

    pub fn single(c: SignalComponent) -> ComponentSet {
        ComponentSet(1 << c.index())
    }

    pub fn from_components(cs: &[SignalComponent]) -> ComponentSet {
        cs.iter().fold(ComponentSet::EMPTY, |s, &c| s.with(c))
    }

    pub fn from_mask(mask: u8) -> ComponentSet {
        ComponentSet(mask & 0b11_1111)
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    pub fn with(self, c: SignalComponent) -> ComponentSet {
        ComponentSet(self.0 | (1 << c.index()))
    }

    pub fn contains(self, c: SignalComponent) -> bool {
        self.0 & (1 << c.index()) != 0
    }

    pub fn union(self, other: ComponentSet) -> ComponentSet {
        ComponentSet(self.0 | other.0)
    }

    pub fn minus(self, other: ComponentSet) -> ComponentSet {
        ComponentSet(self.0 & !other.0)
    }

    pub fn intersect(self, other: ComponentSet) -> ComponentSet {
        ComponentSet(self.0 & other.0)
    }

    pub fn is_subset_of(self, other: ComponentSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = SignalComponent> {
        SignalComponent::ALL
            .into_iter()
            .filter(move |c| self.contains(*c))
    }

    /// All nonempty subsets of this set, in ascending mask order.
    pub fn nonempty_subsets(self) -> Vec<ComponentSet> {
        let mask = self.0;
        (1..=mask)
            .filter(|m| m & !mask == 0)
            .map(ComponentSet)
            .collect()
    }
}

impl std::fmt::Display for ComponentSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for c in self.iter() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{}", c.label())?;
            first = false;
        }
        write!(f, "}}")
    }
}

// ---------------------------------------------------------------------------
// Gaussian channel and power schedules
// ---------------------------------------------------------------------------

#[derive(Debug, Error)]
pub enum ChannelError {
    #[error("channel gain {name}={value} must be finite and nonnegative")]
    InvalidGain { name: &'static str, value: f64 },
    #[error("power budget {name}={value} must be finite and positive")]
    InvalidBudget { name: &'static str, value: f64 },
    #[error("alphabet size for {name} is 0")]
    EmptyAlphabet { name: &'static str },
    #[error("alphabet size {size} for {name} exceeds cap {cap}")]
    AlphabetCapExceeded {
        name: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("pmf table length {got} does not match alphabet product {want}")]
    LengthMismatch { got: usize, want: usize },
    #[error("pmf entry at flat index {index} is {value}, expected nonnegative")]
    NegativeProbability { index: usize, value: f64 },
    #[error("conditional pmf slice {slice} sums to {sum}, expected 1")]
    NotNormalised { slice: String, sum: f64 },
}

/// Standard-form Gaussian interference channel with an eavesdropper.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GaussianChannel {
    /// Gain of user 1's signal at receiver 2.
    pub c12: f64,
    /// Gain of user 2's signal at receiver 1.
    pub c21: f64,
    /// Gain of user 1's signal at the eavesdropper.
    pub c1e: f64,
    /// Gain of user 2's signal at the eavesdropper.
    pub c2e: f64,
    /// Average power budget of user 1.
    pub p1: f64,
    /// Average power budget of user 2.
    pub p2: f64,
}

impl GaussianChannel {
    pub fn new(
        c12: f64,
        c21: f64,
        c1e: f64,
        c2e: f64,
        p1: f64,
        p2: f64,
    ) -> Result<Self, ChannelError> {
        for (name, value) in [("c12", c12), ("c21", c21), ("c1e", c1e), ("c2e", c2e)] {
            if !value.is_finite() || value < 0.0 {
                return Err(ChannelError::InvalidGain { name, value });
            }
        }
        for (name, value) in [("p1", p1), ("p2", p2)] {
            if !value.is_finite() || value <= 0.0 {
                return Err(ChannelError::InvalidBudget { name, value });
            }
        }
        Ok(GaussianChannel {
            c12,
            c21,
            c1e,
            c2e,
            p1,
            p2,
        })
    }

    pub fn budget(&self, user: User) -> f64 {
        match user {
            User::One => self.p1,
            User::Two => self.p2,
        }
    }
}

/// Per-user power split across the four signal parts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct UserPowers {
    pub pc: f64,
    pub ps: f64,
    pub po: f64,
    pub pj: f64,
}

impl UserPowers {
    pub fn new(pc: f64, ps: f64, po: f64, pj: f64) -> Self {
        UserPowers { pc, ps, po, pj }
    }

    pub fn zero() -> Self {
        UserPowers::default()
    }

    pub fn total(&self) -> f64 {
        self.pc + self.ps + self.po + self.pj
    }

    pub fn component(&self, c: SignalComponent) -> f64 {
        match c {
            SignalComponent::C1 | SignalComponent::C2 => self.pc,
            SignalComponent::S1 | SignalComponent::S2 => self.ps,
            SignalComponent::O1 | SignalComponent::O2 => self.po,
        }
    }

    fn entries(&self) -> [(&'static str, f64); 4] {
        [
            ("pc", self.pc),
            ("ps", self.ps),
            ("po", self.po),
            ("pj", self.pj),
        ]
    }
}

/// One joint power allocation, active for a fraction of the time.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct PowerState {
    pub user1: UserPowers,
    pub user2: UserPowers,
}

impl PowerState {
    pub fn new(user1: UserPowers, user2: UserPowers) -> Self {
        PowerState { user1, user2 }
    }

    pub fn user(&self, u: User) -> &UserPowers {
        match u {
            User::One => &self.user1,
            User::Two => &self.user2,
        }
    }

    /// Received power of a codebook component at an observation point with
    /// the given per-user amplitude-squared gains.
    pub fn received_power(&self, c: SignalComponent, gains: [f64; 2]) -> f64 {
        gains[c.user().index()] * self.user(c.user()).component(c)
    }
}

/// A finite list of power states with time-sharing probabilities.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct TimeSharingSchedule {
    pub states: Vec<(f64, PowerState)>,
}

impl TimeSharingSchedule {
    pub fn new(states: Vec<(f64, PowerState)>) -> Self {
        TimeSharingSchedule { states }
    }

    pub fn single(state: PowerState) -> Self {
        TimeSharingSchedule {
            states: vec![(1.0, state)],
        }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Time-averaged transmit power of one user.
    pub fn average_power(&self, u: User) -> f64 {
        self.states
            .iter()
            .map(|(p, st)| p * st.user(u).total())
            .sum()
    }
}

/// Structural defects that make a schedule meaningless (as opposed to a
/// merely infeasible budget).
#[derive(Debug, Error, PartialEq)]
pub enum ScheduleStructureError {
    #[error("schedule has no states")]
    Empty,
    #[error("state {state}: probability {value} is negative or non-finite")]
    BadProbability { state: usize, value: f64 },
    #[error("state {state}: user {user} power {name}={value} is negative or non-finite")]
    BadPower {
        state: usize,
        user: User,
        name: &'static str,
        value: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Violation {
    ProbabilityNotNormalised {
        sum: f64,
    },
    BudgetExceeded {
        user: User,
        average: f64,
        budget: f64,
        excess: f64,
    },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::ProbabilityNotNormalised { sum } => {
                write!(f, "state probabilities sum to {sum}, expected 1")
            }
            Violation::BudgetExceeded {
                user,
                average,
                budget,
                excess,
            } => write!(
                f,
                "user {user} average power {average} exceeds budget {budget} by {excess}"
            ),
        }
    }
}

/// Validation outcome for a structurally sound schedule.
#[derive(Debug, Clone, Serialize)]
pub struct ScheduleReport {
    pub violations: Vec<Violation>,
}

impl ScheduleReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks probability normalisation and both average-power budgets.
///
/// Structural defects (no states, negative probabilities or powers) are
/// errors; budget and normalisation problems are reported as violations.
pub fn validate_schedule(
    schedule: &TimeSharingSchedule,
    channel: &GaussianChannel,
) -> Result<ScheduleReport, ScheduleStructureError> {
    if schedule.is_empty() {
        return Err(ScheduleStructureError::Empty);
    }
    for (i, (p, st)) in schedule.states.iter().enumerate() {
        if !p.is_finite() || *p < 0.0 {
            return Err(ScheduleStructureError::BadProbability {
                state: i,
                value: *p,
            });
        }
        for user in [User::One, User::Two] {
            for (name, value) in st.user(user).entries() {
                if !value.is_finite() || value < 0.0 {
                    return Err(ScheduleStructureError::BadPower {
                        state: i,
                        user,
                        name,
                        value,
                    });
                }
            }
        }
    }

    let mut violations = Vec::new();
    let psum: f64 = schedule.states.iter().map(|(p, _)| p).sum();
    if (psum - 1.0).abs() > BUDGET_TOL {
        violations.push(Violation::ProbabilityNotNormalised { sum: psum });
    }
    for user in [User::One, User::Two] {
        let average = schedule.average_power(user);
        let budget = channel.budget(user);
        if average > budget + BUDGET_TOL {
            violations.push(Violation::BudgetExceeded {
                user,
                average,
                budget,
                excess: average - budget,
            });
        }
    }
    Ok(ScheduleReport { violations })
}

// ---------------------------------------------------------------------------
// Discrete channels
// ---------------------------------------------------------------------------

fn validate_conditional(
    probs: &[f64],
    n_in: usize,
    n_out: usize,
    what: &'static str,
) -> Result<(), ChannelError> {
    if probs.len() != n_in * n_out {
        return Err(ChannelError::LengthMismatch {
            got: probs.len(),
            want: n_in * n_out,
        });
    }
    for (i, &p) in probs.iter().enumerate() {
        if !p.is_finite() || p < 0.0 {
            return Err(ChannelError::NegativeProbability { index: i, value: p });
        }
    }
    for row in 0..n_in {
        let sum: f64 = probs[row * n_out..(row + 1) * n_out].iter().sum();
        if (sum - 1.0).abs() > NORMALISATION_TOL {
            return Err(ChannelError::NotNormalised {
                slice: format!("{what}[{row}]"),
                sum,
            });
        }
    }
    Ok(())
}

fn check_alphabet(name: &'static str, size: usize, cap: usize) -> Result<(), ChannelError> {
    if size == 0 {
        return Err(ChannelError::EmptyAlphabet { name });
    }
    if size > cap {
        return Err(ChannelError::AlphabetCapExceeded { name, size, cap });
    }
    Ok(())
}

/// A discrete memoryless interference channel with eavesdropper,
/// `p(y1, y2, ye | x1, x2)` over finite alphabets.
#[derive(Debug, Clone)]
pub struct DiscreteChannel {
    nx1: usize,
    nx2: usize,
    ny1: usize,
    ny2: usize,
    nye: usize,
    // flat [x1][x2][y1][y2][ye]
    probs: Vec<f64>,
}

impl DiscreteChannel {
    pub fn new(
        sizes: (usize, usize, usize, usize, usize),
        probs: Vec<f64>,
    ) -> Result<Self, ChannelError> {
        Self::with_alphabet_cap(sizes, probs, DEFAULT_ALPHABET_CAP)
    }

    pub fn with_alphabet_cap(
        (nx1, nx2, ny1, ny2, nye): (usize, usize, usize, usize, usize),
        probs: Vec<f64>,
        cap: usize,
    ) -> Result<Self, ChannelError> {
        for (name, size) in [
            ("x1", nx1),
            ("x2", nx2),
            ("y1", ny1),
            ("y2", ny2),
            ("ye", nye),
        ] {
            check_alphabet(name, size, cap)?;
        }
        validate_conditional(&probs, nx1 * nx2, ny1 * ny2 * nye, "p(y1,y2,ye|x1,x2)")?;
        Ok(DiscreteChannel {
            nx1,
            nx2,
            ny1,
            ny2,
            nye,
            probs,
        })
    }

    pub fn sizes(&self) -> (usize, usize, usize, usize, usize) {
        (self.nx1, self.nx2, self.ny1, self.ny2, self.nye)
    }

    pub fn prob(&self, x1: usize, x2: usize, y1: usize, y2: usize, ye: usize) -> f64 {
        let idx = ((((x1 * self.nx2) + x2) * self.ny1 + y1) * self.ny2 + y2) * self.nye + ye;
        self.probs[idx]
    }
}

/// A discrete multiple-access channel heard by one receiver and one
/// eavesdropper, `p(y1, ye | x1, x2)`.
#[derive(Debug, Clone)]
pub struct MacChannel {
    nx1: usize,
    nx2: usize,
    ny1: usize,
    nye: usize,
    // flat [x1][x2][y1][ye]
    probs: Vec<f64>,
}

impl MacChannel {
    pub fn new(
        (nx1, nx2, ny1, nye): (usize, usize, usize, usize),
        probs: Vec<f64>,
    ) -> Result<Self, ChannelError> {
        for (name, size) in [("x1", nx1), ("x2", nx2), ("y1", ny1), ("ye", nye)] {
            check_alphabet(name, size, DEFAULT_ALPHABET_CAP)?;
        }
        validate_conditional(&probs, nx1 * nx2, ny1 * nye, "p(y1,ye|x1,x2)")?;
        Ok(MacChannel {
            nx1,
            nx2,
            ny1,
            nye,
            probs,
        })
    }

    pub fn sizes(&self) -> (usize, usize, usize, usize) {
        (self.nx1, self.nx2, self.ny1, self.nye)
    }

    pub fn prob(&self, x1: usize, x2: usize, y1: usize, ye: usize) -> f64 {
        self.probs[((x1 * self.nx2 + x2) * self.ny1 + y1) * self.nye + ye]
    }
}

/// Embeds a multiple-access channel into the interference-channel interface
/// by handing receiver 2 an exact copy of receiver 1's output.
pub fn mac_to_ice(mac: &MacChannel) -> DiscreteChannel {
    let (nx1, nx2, ny1, nye) = mac.sizes();
    let ny2 = ny1;
    let mut probs = vec![0.0; nx1 * nx2 * ny1 * ny2 * nye];
    for x1 in 0..nx1 {
        for x2 in 0..nx2 {
            for y1 in 0..ny1 {
                for ye in 0..nye {
                    let idx = ((((x1 * nx2) + x2) * ny1 + y1) * ny2 + y1) * nye + ye;
                    probs[idx] = mac.prob(x1, x2, y1, ye);
                }
            }
        }
    }
    DiscreteChannel {
        nx1,
        nx2,
        ny1,
        ny2,
        nye,
        probs,
    }
}

// ---------------------------------------------------------------------------
// Factored channel inputs
// ---------------------------------------------------------------------------

/// A stochastic map `p(x | a, b, c)` from three codebook symbols to a channel
/// input, stored flat as `[a][b][c][x]`.
#[derive(Debug, Clone)]
pub struct PrefixKernel {
    pub dims_in: [usize; 3],
    pub n_out: usize,
    pub probs: Vec<f64>,
}

impl PrefixKernel {
    pub fn new(dims_in: [usize; 3], n_out: usize, probs: Vec<f64>) -> Result<Self, ChannelError> {
        let n_in = dims_in.iter().product::<usize>();
        if n_in == 0 {
            return Err(ChannelError::EmptyAlphabet { name: "kernel in" });
        }
        if n_out == 0 {
            return Err(ChannelError::EmptyAlphabet { name: "kernel out" });
        }
        validate_conditional(&probs, n_in, n_out, "p(x|a,b,c)")?;
        Ok(PrefixKernel {
            dims_in,
            n_out,
            probs,
        })
    }

    /// A deterministic kernel `x = f(a, b, c)`.
    pub fn deterministic(
        dims_in: [usize; 3],
        n_out: usize,
        f: impl Fn(usize, usize, usize) -> usize,
    ) -> Self {
        let mut probs = vec![0.0; dims_in.iter().product::<usize>() * n_out];
        for a in 0..dims_in[0] {
            for b in 0..dims_in[1] {
                for c in 0..dims_in[2] {
                    let x = f(a, b, c);
                    assert!(x < n_out, "deterministic kernel output out of range");
                    probs[((a * dims_in[1] + b) * dims_in[2] + c) * n_out + x] = 1.0;
                }
            }
        }
        PrefixKernel {
            dims_in,
            n_out,
            probs,
        }
    }

    pub fn prob(&self, a: usize, b: usize, c: usize, x: usize) -> f64 {
        self.probs[((a * self.dims_in[1] + b) * self.dims_in[2] + c) * self.n_out + x]
    }
}

/// A factored input distribution for the discrete channel: a time-sharing
/// pmf, per-state independent marginals for the six codebook components, and
/// one prefixing kernel per user mapping that user's components to its
/// channel input.
#[derive(Debug, Clone)]
pub struct FactoredInput {
    pq: Vec<f64>,
    /// `marginals[component][state][symbol]`
    marginals: [Vec<Vec<f64>>; 6],
    x1_kernel: PrefixKernel,
    x2_kernel: PrefixKernel,
}

impl FactoredInput {
    pub fn new(
        pq: Vec<f64>,
        marginals: [Vec<Vec<f64>>; 6],
        x1_kernel: PrefixKernel,
        x2_kernel: PrefixKernel,
    ) -> Result<Self, ChannelError> {
        Self::with_alphabet_cap(pq, marginals, x1_kernel, x2_kernel, DEFAULT_ALPHABET_CAP)
    }

    pub fn with_alphabet_cap(
        pq: Vec<f64>,
        marginals: [Vec<Vec<f64>>; 6],
        x1_kernel: PrefixKernel,
        x2_kernel: PrefixKernel,
        cap: usize,
    ) -> Result<Self, ChannelError> {
        if pq.is_empty() {
            return Err(ChannelError::EmptyAlphabet { name: "q" });
        }
        validate_conditional(&pq, 1, pq.len(), "p(q)")?;
        for c in SignalComponent::ALL {
            let rows = &marginals[c.index()];
            if rows.len() != pq.len() {
                return Err(ChannelError::LengthMismatch {
                    got: rows.len(),
                    want: pq.len(),
                });
            }
            let size = rows[0].len();
            check_alphabet(c.label(), size, cap)?;
            for (q, row) in rows.iter().enumerate() {
                if row.len() != size {
                    return Err(ChannelError::LengthMismatch {
                        got: row.len(),
                        want: size,
                    });
                }
                validate_conditional(row, 1, size, "p(component|q)")
                    .map_err(|_| ChannelError::NotNormalised {
                        slice: format!("p({}|q={q})", c.label()),
                        sum: row.iter().sum(),
                    })?;
            }
        }
        let want1 = [
            marginals[0][0].len(),
            marginals[1][0].len(),
            marginals[2][0].len(),
        ];
        let want2 = [
            marginals[3][0].len(),
            marginals[4][0].len(),
            marginals[5][0].len(),
        ];
        if x1_kernel.dims_in != want1 {
            return Err(ChannelError::LengthMismatch {
                got: x1_kernel.dims_in.iter().product(),
                want: want1.iter().product(),
            });
        }
        if x2_kernel.dims_in != want2 {
            return Err(ChannelError::LengthMismatch {
                got: x2_kernel.dims_in.iter().product(),
                want: want2.iter().product(),
            });
        }
        Ok(FactoredInput {
            pq,
            marginals,
            x1_kernel,
            x2_kernel,
        })
    }

    pub fn n_states(&self) -> usize {
        self.pq.len()
    }

    pub fn state_prob(&self, q: usize) -> f64 {
        self.pq[q]
    }

    pub fn component_size(&self, c: SignalComponent) -> usize {
        self.marginals[c.index()][0].len()
    }

    pub fn component_prob(&self, c: SignalComponent, q: usize, symbol: usize) -> f64 {
        self.marginals[c.index()][q][symbol]
    }

    pub fn x1_kernel(&self) -> &PrefixKernel {
        &self.x1_kernel
    }

    pub fn x2_kernel(&self) -> &PrefixKernel {
        &self.x2_kernel
    }
}

/// Builds a single-state input in which only the listed components have
/// nontrivial alphabets; each live component feeds its user's channel input
/// through an identity map and all silent components are single-symbol.
///
/// At most one live component per user is supported by this helper.
pub fn two_component_input(
    live: &[(SignalComponent, Vec<f64>)],
) -> Result<FactoredInput, ChannelError> {
    let mut marginals: [Vec<Vec<f64>>; 6] = Default::default();
    for c in SignalComponent::ALL {
        marginals[c.index()] = vec![vec![1.0]];
    }
    let mut live1: Option<SignalComponent> = None;
    let mut live2: Option<SignalComponent> = None;
    for (c, pmf) in live {
        marginals[c.index()] = vec![pmf.clone()];
        match c.user() {
            User::One => {
                assert!(live1.is_none(), "two live components for user 1");
                live1 = Some(*c);
            }
            User::Two => {
                assert!(live2.is_none(), "two live components for user 2");
                live2 = Some(*c);
            }
        }
    }
    let dims = |m: &[Vec<Vec<f64>>; 6], u: User| -> [usize; 3] {
        let base = if u == User::One { 0 } else { 3 };
        [
            m[base][0].len(),
            m[base + 1][0].len(),
            m[base + 2][0].len(),
        ]
    };
    let kernel = |m: &[Vec<Vec<f64>>; 6], u: User, live: Option<SignalComponent>| {
        let d = dims(m, u);
        let n_out = live.map_or(1, |c| m[c.index()][0].len());
        PrefixKernel::deterministic(d, n_out, move |a, b, c| match live {
            None => 0,
            Some(comp) => match comp.index() % 3 {
                0 => a,
                1 => b,
                _ => c,
            },
        })
    };
    let x1 = kernel(&marginals, User::One, live1);
    let x2 = kernel(&marginals, User::Two, live2);
    FactoredInput::new(vec![1.0], marginals, x1, x2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig3() -> GaussianChannel {
        GaussianChannel::new(1.9, 1.9, 0.5, 0.5, 10.0, 10.0).unwrap()
    }

    fn state_user1(pc: f64, ps: f64, po: f64, pj: f64) -> PowerState {
        PowerState::new(UserPowers::new(pc, ps, po, pj), UserPowers::zero())
    }

    #[test]
    fn exact_budget_single_state_is_ok() {
        let sched = TimeSharingSchedule::single(state_user1(5.0, 5.0, 0.0, 0.0));
        let report = validate_schedule(&sched, &fig3()).unwrap();
        assert!(report.is_ok(), "violations: {:?}", report.violations);
    }

    #[test]
    fn two_state_average_meets_budget() {
        let sched = TimeSharingSchedule::new(vec![
            (0.5, state_user1(0.0, 20.0, 0.0, 0.0)),
            (0.5, PowerState::default()),
        ]);
        let report = validate_schedule(&sched, &fig3()).unwrap();
        assert!(report.is_ok(), "violations: {:?}", report.violations);
        assert!((sched.average_power(User::One) - 10.0).abs() < 1e-12);
    }

    #[test]
    fn budget_excess_is_reported() {
        let sched = TimeSharingSchedule::single(state_user1(11.0, 0.0, 0.0, 0.0));
        let report = validate_schedule(&sched, &fig3()).unwrap();
        assert_eq!(report.violations.len(), 1);
        match &report.violations[0] {
            Violation::BudgetExceeded { user, excess, .. } => {
                assert_eq!(*user, User::One);
                assert!((excess - 1.0).abs() < 1e-9, "excess {excess}");
            }
            other => panic!("unexpected violation {other:?}"),
        }
    }

    #[test]
    fn structural_errors_are_distinct_from_violations() {
        let empty = TimeSharingSchedule::new(vec![]);
        assert_eq!(
            validate_schedule(&empty, &fig3()).unwrap_err(),
            ScheduleStructureError::Empty
        );
        let neg = TimeSharingSchedule::single(state_user1(-1.0, 0.0, 0.0, 0.0));
        assert!(matches!(
            validate_schedule(&neg, &fig3()).unwrap_err(),
            ScheduleStructureError::BadPower { .. }
        ));
        let negp = TimeSharingSchedule::new(vec![(-0.5, PowerState::default())]);
        assert!(matches!(
            validate_schedule(&negp, &fig3()).unwrap_err(),
            ScheduleStructureError::BadProbability { .. }
        ));
    }

    #[test]
    fn normalisation_violation_is_reported() {
        let sched = TimeSharingSchedule::new(vec![
            (0.4, PowerState::default()),
            (0.4, PowerState::default()),
        ]);
        let report = validate_schedule(&sched, &fig3()).unwrap();
        assert!(matches!(
            report.violations[0],
            Violation::ProbabilityNotNormalised { .. }
        ));
    }

    #[test]
    fn gaussian_channel_rejects_bad_parameters() {
        assert!(GaussianChannel::new(-0.1, 1.0, 1.0, 1.0, 1.0, 1.0).is_err());
        assert!(GaussianChannel::new(1.0, 1.0, 1.0, 1.0, 0.0, 1.0).is_err());
        assert!(GaussianChannel::new(1.0, f64::NAN, 1.0, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn component_set_subset_enumeration() {
        let rx1 = ComponentSet::from_components(&[
            SignalComponent::C1,
            SignalComponent::S1,
            SignalComponent::C2,
            SignalComponent::O2,
        ]);
        let subs = rx1.nonempty_subsets();
        assert_eq!(subs.len(), 15);
        assert!(subs.iter().all(|s| s.is_subset_of(rx1) && !s.is_empty()));
        assert_eq!(ComponentSet::FULL.nonempty_subsets().len(), 63);
    }

    #[test]
    fn mac_embedding_collapses_receiver_two() {
        // Binary symmetric MAC outputs: y1 = x1 xor x2 w.p. .9, ye = x1.
        let mut probs = vec![0.0; 2 * 2 * 2 * 2];
        for x1 in 0..2usize {
            for x2 in 0..2usize {
                for y1 in 0..2usize {
                    for ye in 0..2usize {
                        let p1 = if y1 == (x1 ^ x2) { 0.9 } else { 0.1 };
                        let pe = if ye == x1 { 1.0 } else { 0.0 };
                        probs[((x1 * 2 + x2) * 2 + y1) * 2 + ye] = p1 * pe;
                    }
                }
            }
        }
        let mac = MacChannel::new((2, 2, 2, 2), probs).unwrap();
        let ice = mac_to_ice(&mac);
        let (nx1, nx2, ny1, ny2, nye) = ice.sizes();
        assert_eq!((nx1, nx2, ny1, ny2, nye), (2, 2, 2, 2, 2));
        // Marginalising out y2 must recover the MAC pmf exactly, and all
        // mass must sit on the diagonal y2 == y1.
        for x1 in 0..2 {
            for x2 in 0..2 {
                for y1 in 0..2 {
                    for ye in 0..2 {
                        let collapsed: f64 =
                            (0..2).map(|y2| ice.prob(x1, x2, y1, y2, ye)).sum();
                        assert_eq!(collapsed, mac.prob(x1, x2, y1, ye));
                        assert_eq!(ice.prob(x1, x2, y1, 1 - y1, ye), 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn discrete_channel_rejects_unnormalised_rows() {
        let probs = vec![0.5; 2 * 2 * 2 * 1 * 1];
        assert!(matches!(
            DiscreteChannel::new((2, 2, 2, 1, 1), probs),
            Err(ChannelError::NotNormalised { .. })
        ));
    }

    #[test]
    fn two_component_input_shapes() {
        let input = two_component_input(&[
            (SignalComponent::S1, vec![0.5, 0.5]),
            (SignalComponent::O2, vec![0.25, 0.75]),
        ])
        .unwrap();
        assert_eq!(input.component_size(SignalComponent::S1), 2);
        assert_eq!(input.component_size(SignalComponent::C1), 1);
        assert_eq!(input.x1_kernel().n_out, 2);
        // x1 copies s1
        assert_eq!(input.x1_kernel().prob(0, 1, 0, 1), 1.0);
        assert_eq!(input.x2_kernel().prob(0, 0, 1, 1), 1.0);
    }
}
