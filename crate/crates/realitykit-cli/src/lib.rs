pub mod closed_form;
pub mod experiments;
