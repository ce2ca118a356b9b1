pub mod cli;
pub mod codec;
pub mod diagram;
pub mod families;
pub mod invariants;
pub mod moves;
pub mod pairing;
pub mod par;
pub mod search;
pub mod verify;
