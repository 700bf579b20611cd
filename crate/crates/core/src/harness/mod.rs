pub mod calibration;
pub mod emit;
pub mod sweep;
pub mod tables;
pub mod verify;
