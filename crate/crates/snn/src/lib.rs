//! Two-layer spiking network in the Diehl-Cook configuration: leaky
//! integrate-and-fire neurons with conductance synapses and adaptive
//! thresholds, plastic input synapses under log/add/mult STDP, Poisson rate
//! encoding of images, and lateral inhibition through a paired inhibitory
//! layer.

pub mod encoding;
pub mod network;
pub mod neuron;
pub mod plasticity;

mod error;

pub use error::SnnError;
pub use network::{Network, NetworkConfig, Plasticity, PresentationResult, SpikeSchedule};
pub use neuron::{NeuronParams, NeuronPopulation, SynapseKind};
pub use plasticity::{StdpConfig, StdpRule, TraceState};
