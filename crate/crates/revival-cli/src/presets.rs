//! Named trace presets covering the eight reference parameter sets the
//! binary ships with. Each couples a state family to its displacement,
//! squeeze, and grid so a whole trace is one command.

use revival_lab::fock::StateParams;

pub struct FigurePreset {
    pub name: &'static str,
    pub family: &'static str,
    pub params: StateParams,
    pub lambda: f64,
    pub delta: f64,
    pub tmax: f64,
    pub points: usize,
}

fn entry(
    name: &'static str,
    family: &'static str,
    params: StateParams,
    tmax: f64,
    points: usize,
) -> FigurePreset {
    FigurePreset {
        name,
        family,
        params,
        lambda: 1.0,
        delta: 0.0,
        tmax,
        points,
    }
}

pub fn preset(name: &str) -> Option<FigurePreset> {
    Some(match name {
        "fig1" => entry(
            "fig1",
            "coherent",
            StateParams::coherent(2.0, 0.0),
            60.0,
            6000,
        ),
        "fig2" => entry(
            "fig2",
            "ncoherent",
            StateParams::n_photon_coherent(2.0, 0.0, 3),
            60.0,
            6000,
        ),
        "fig3" => entry(
            "fig3",
            "coherent",
            StateParams::coherent(10.0, 0.0),
            120.0,
            24000,
        ),
        "fig4" => entry(
            "fig4",
            "ncoherent",
            StateParams::n_photon_coherent(10.0, 0.0, 3),
            120.0,
            24000,
        ),
        "fig5" => entry(
            "fig5",
            "squeezed",
            StateParams::squeezed(2.56230, 0.0, 0.424875),
            60.0,
            6000,
        ),
        "fig6" => entry(
            "fig6",
            "nsqueezed",
            StateParams::n_photon_squeezed(2.18536, 0.0, 0.424875, 2),
            60.0,
            6000,
        ),
        "fig7" => entry(
            "fig7",
            "squeezed",
            StateParams::squeezed(24.4485, 0.0, 0.8992),
            120.0,
            24000,
        ),
        "fig8" => entry(
            "fig8",
            "nsqueezed",
            StateParams::n_photon_squeezed(23.92344, 0.0, 0.8992, 2),
            120.0,
            24000,
        ),
        _ => return None,
    })
}

pub const PRESET_NAMES: [&str; 8] = [
    "fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8",
];
