//! Rule and data files shipped with the library.

pub const DIELS_ALDER: &str = include_str!("../assets/diels_alder.gml");
pub const BETA_LACTAMASE: &str = include_str!("../assets/beta_lactamase.gml");
pub const KETO_ENOL: &str = include_str!("../assets/formose/keto_enol.gml");
pub const KETO_ENOL_REVERSE: &str = include_str!("../assets/formose/keto_enol_reverse.gml");
pub const ALDOL: &str = include_str!("../assets/formose/aldol.gml");
pub const ALDOL_REVERSE: &str = include_str!("../assets/formose/aldol_reverse.gml");
pub const WYE_TO_DELTA: &str = include_str!("../assets/ydelta/wye_to_delta.gml");
pub const DELTA_TO_WYE: &str = include_str!("../assets/ydelta/delta_to_wye.gml");

/// The four formose rules in the order they are applied.
pub const FORMOSE: [&str; 4] = [KETO_ENOL, KETO_ENOL_REVERSE, ALDOL, ALDOL_REVERSE];

/// Birth and the two death rules of Conway's Game of Life.
pub const LIFE: &str = include_str!("../assets/life/rules.gml");
/// Groups used by the NADH / NAD+ examples: `CONH2` and `Ribo-ADP`.
pub const GROUPS: &str = include_str!("../assets/groups.gml");
/// A small illustrative group-contribution table.
pub const ENERGY_DEMO: &str = include_str!("../assets/energy/demo.tbl");
