pub mod action_check;
pub mod electrostatic;
pub mod evolve;
pub mod lagrangian_eval;
pub mod saddle;
pub mod verify;
