// Generated by tools/oracle.py; do not edit.
#![allow(dead_code, clippy::excessive_precision)]

/// (s0, mu, alpha, p, [eps_min, eps_max, eps_min_corollary, eps_max_corollary,
/// c_stated, c_stated_upper_window, c_proof, c_proof_corollary, pi, t1, t2, t3, s0_threshold])
pub const THEOREM: &[(usize, f64, f64, usize, [f64; 13])] = &[
    (1, 0.0002, 1.0, 256, [0.00006667000355573352297245456, 0.01440576, 0.0001000050080004006400320512, 0.01440576, 1.391594163698924048563442, 0.8348674174813946820079951, 0.7247496629313081887153144, 0.7249797331147093285356805, 0.0, 0.0340206908719885846971845, 0.3244428422615250763289575, 0.02254211001389005323999882, 0.195247541982764391518561]),
    (1, 0.0002, 2.5, 256, [0.00006667000355573352297245456, 0.01440576, 0.0001000050080004006400320512, 0.01440576, 1.391594163698924048563442, 0.8348674174813946820079951, 0.7247496629313081887153144, 0.7249797331147093285356805, 0.99814605712890625, 0.0340206908719885846971845, 0.3244428422615250763289575, 0.01288120572222288756571361, 0.1115700239901510808677491]),
    (1, 0.001, 1.0, 256, [0.000333417111222814963753285, 0.072144, 0.000500126000252000504001008, 0.072144, 1.625410760819916811165128, 0.9747257776741984592050014, 0.957853794492091386445349, 0.959161978042363165572392, 0.0, 0.0340206908719885846971845, 0.3244428422615250763289575, 0.02254211001389005323999882, 0.195247541982764391518561]),
    (1, 0.001, 2.5, 256, [0.000333417111222814963753285, 0.072144, 0.000500126000252000504001008, 0.072144, 1.625410760819916811165128, 0.9747257776741984592050014, 0.957853794492091386445349, 0.959161978042363165572392, 0.99814605712890625, 0.0340206908719885846971845, 0.3244428422615250763289575, 0.01288120572222288756571361, 0.1115700239901510808677491]),
    (1, 0.002, 1.0, 256, [0.0006670035573523058789646878, 0.144576, 0.001000508004064032512260098, 0.144576, 1.919426404522311869286114, 1.150424818408873772461743, 1.250976303474399338676506, 1.253991211660090295417959, 0.0, 0.0340206908719885846971845, 0.3244428422615250763289575, 0.02254211001389005323999882, 0.195247541982764391518561]),
    (1, 0.002, 2.5, 256, [0.0006670035573523058789646878, 0.144576, 0.001000508004064032512260098, 0.144576, 1.919426404522311869286114, 1.150424818408873772461743, 1.250976303474399338676506, 1.253991211660090295417959, 0.99814605712890625, 0.0340206908719885846971845, 0.3244428422615250763289575, 0.01288120572222288756571361, 0.1115700239901510808677491]),
    (2, 0.0002, 1.0, 256, [0.0001885884950991854837533434, 0.04077543059634513740548864, 0.0002828827577358602474979773, 0.04082151059634513740548864, 1.66355530519705895295976, 0.9975302807643658045251347, 0.9958813134638496306493008, 0.9977598058628384581671814, 0.0, 0.009602442989630518602606528, 0.1270604689250859036590328, 0.02254211001389005323999882, 0.195247541982764391518561]),
    (2, 0.0002, 2.5, 256, [0.0001885884950991854837533434, 0.04077543059634513740548864, 0.0002828827577358602474979773, 0.04082151059634513740548864, 1.66355530519705895295976, 0.9975302807643658045251347, 0.9958813134638496306493008, 0.9977598058628384581671814, 0.99814605712890625, 0.009602442989630518602606528, 0.1270604689250859036590328, 0.01288120572222288756571361, 0.1115700239901510808677491]),
    (2, 0.001, 1.0, 256, [0.0009434782241906612076310128, 0.2047987529817256870274432, 0.001415219223249988048753884, 0.2059507529817256870274432, 3.001929221791237320304914, 1.795694865000007252106125, 2.33019240263447863753612, 2.352225765269943573343519, 0.0, 0.009602442989630518602606528, 0.1270604689250859036590328, 0.02254211001389005323999882, 0.195247541982764391518561]),
    (2, 0.001, 2.5, 256, [0.0009434782241906612076310128, 0.2047987529817256870274432, 0.001415219223249988048753884, 0.2059507529817256870274432, 3.001929221791237320304914, 1.795694865000007252106125, 2.33019240263447863753612, 2.352225765269943573343519, 0.99814605712890625, 0.009602442989630518602606528, 0.1270604689250859036590328, 0.01288120572222288756571361, 0.1115700239901510808677491]),
    (2, 0.002, 1.0, 256, [0.001888304891749638727882016, 0.4119015059634513740548864, 0.002832472444305298982387096, 0.4165095059634513740548864, 4.714876819878733375769275, 2.811675737137527571803472, 4.037984723964860047907, 4.114639313723742178521596, 0.0, 0.009602442989630518602606528, 0.1270604689250859036590328, 0.02254211001389005323999882, 0.195247541982764391518561]),
    (2, 0.002, 2.5, 256, [0.001888304891749638727882016, 0.4119015059634513740548864, 0.002832472444305298982387096, 0.4165095059634513740548864, 4.714876819878733375769275, 2.811675737137527571803472, 4.037984723964860047907, 4.114639313723742178521596, 0.99814605712890625, 0.009602442989630518602606528, 0.1270604689250859036590328, 0.01288120572222288756571361, 0.1115700239901510808677491]),
    (3, 0.0002, 1.0, 256, [0.0003465002169538101713151167, 0.07498011488697549908038568, 0.0005197503670107512706385389, 0.07529115488697549908038568, 2.24659405852471650644967, 1.34570890542763995856164, 1.577143816006782901842527, 1.586291235134265339086711, 0.0, 0.004421772443923741334163242, 0.06726260106665223750988111, 0.02254211001389005323999882, 0.195247541982764391518561]),
    (3, 0.0002, 2.5, 256, [0.0003465002169538101713151167, 0.07498011488697549908038568, 0.0005197503670107512706385389, 0.07529115488697549908038568, 2.24659405852471650644967, 1.34570890542763995856164, 1.577143816006782901842527, 1.586291235134265339086711, 0.99814605712890625, 0.004421772443923741334163242, 0.06726260106665223750988111, 0.01288120572222288756571361, 0.1115700239901510808677491]),
    (3, 0.001, 1.0, 256, [0.001734307744799856492953418, 0.3780109744348774954019284, 0.002601466820154236865712364, 0.3857869744348774954019284, 6.015468809222704436594612, 3.578855253658021618842599, 5.334632792433768938448549, 5.498993346550652635216844, 0.0, 0.004421772443923741334163242, 0.06726260106665223750988111, 0.02254211001389005323999882, 0.195247541982764391518561]),
    (3, 0.001, 2.5, 256, [0.001734307744799856492953418, 0.3780109744348774954019284, 0.002601466820154236865712364, 0.3857869744348774954019284, 6.015468809222704436594612, 3.578855253658021618842599, 5.334632792433768938448549, 5.498993346550652635216844, 0.99814605712890625, 0.004421772443923741334163242, 0.06726260106665223750988111, 0.01288120572222288756571361, 0.1115700239901510808677491]),
    (3, 0.002, 1.0, 256, [0.003473157185652725030655383, 0.7637979488697549908038568, 0.005209777457365608655190064, 0.7949019488697549908038568, 10.99900174953508188927687, 6.486559619908085296262516, 10.30334143127056896631239, 10.95274366723872468221081, 0.0, 0.004421772443923741334163242, 0.06726260106665223750988111, 0.02254211001389005323999882, 0.195247541982764391518561]),
    (3, 0.002, 2.5, 256, [0.003473157185652725030655383, 0.7637979488697549908038568, 0.005209777457365608655190064, 0.7949019488697549908038568, 10.99900174953508188927687, 6.486559619908085296262516, 10.30334143127056896631239, 10.95274366723872468221081, 0.99814605712890625, 0.004421772443923741334163242, 0.06726260106665223750988111, 0.01288120572222288756571361, 0.1115700239901510808677491]),
    (4, 0.0002, 1.0, 256, [0.0005335467804899798378623654, 0.11556864, 0.0008003202561024819527942249, 0.11667456, 3.218443363336332089147323, 1.924438059308348808512356, 2.546036528640361531894433, 2.579292916646123063455023, 0.0, 0.002526412760795135140821942, 0.04138029443011839749411931, 0.02254211001389005323999882, 0.195247541982764391518561]),
    (4, 0.0002, 2.5, 256, [0.0005335467804899798378623654, 0.11556864, 0.0008003202561024819527942249, 0.11667456, 3.218443363336332089147323, 1.924438059308348808512356, 2.546036528640361531894433, 2.579292916646123063455023, 0.99814605712890625, 0.002526412760795135140821942, 0.04138029443011839749411931, 0.01288120572222288756571361, 0.1115700239901510808677491]),
    (4, 0.001, 1.0, 256, [0.00267201425074267062757668, 0.585216, 0.004008032064256514052112417, 0.612864, 11.21918679323761396158225, 6.613366631706054100566316, 10.52274571896688451459655, 11.25861758411621061749713, 0.0, 0.002526412760795135140821942, 0.04138029443011839749411931, 0.02254211001389005323999882, 0.195247541982764391518561]),
    (4, 0.001, 2.5, 256, [0.00267201425074267062757668, 0.585216, 0.004008032064256514052112417, 0.612864, 11.21918679323761396158225, 6.613366631706054100566316, 10.52274571896688451459655, 11.25861758411621061749713, 0.99814605712890625, 0.002526412760795135140821942, 0.04138029443011839749411931, 0.01288120572222288756571361, 0.1115700239901510808677491]),
    (4, 0.002, 1.0, 256, [0.005354780901992575841617955, 1.188864, 0.008032257032225031200998432, 1.299456, 22.35623792157045747973929, 12.92913402419913458856973, 21.62710139318991397949819, 24.76979676754917440849949, 0.0, 0.002526412760795135140821942, 0.04138029443011839749411931, 0.02254211001389005323999882, 0.195247541982764391518561]),
    (4, 0.002, 2.5, 256, [0.005354780901992575841617955, 1.188864, 0.008032257032225031200998432, 1.299456, 22.35623792157045747973929, 12.92913402419913458856973, 21.62710139318991397949819, 24.76979676754917440849949, 0.99814605712890625, 0.002526412760795135140821942, 0.04138029443011839749411931, 0.01288120572222288756571361, 0.1115700239901510808677491]),
];

/// (s0, mu, [eps_min, eps_max, eps_max_substituted, lower, upper]) at lam1 = 5/4, lam_s0 = 3/4
pub const COROLLARY: &[(usize, f64, [f64; 5])] = &[
    (1, 0.0002, [0.0001000050080004006400320512, 0.01440576, 0.01440576, 0.7496999849759987980799038, 1.29321728]),
    (1, 0.001, [0.000500126000252000504001008, 0.072144, 0.072144, 0.748499621999243998487997, 1.466432]),
    (1, 0.002, [0.001000508004064032512260098, 0.144576, 0.144576, 0.7469984759878079024632197, 1.683728]),
    (2, 0.0002, [0.0002828827577358602474979773, 0.04082151059634513740548864, 0.04077543059634513740548864, 0.7483027034535848385150121, 1.494929063578070824432932]),
    (2, 0.001, [0.001415219223249988048753884, 0.2059507529817256870274432, 0.2047987529817256870274432, 0.7415086846605000717074767, 2.485704517890354122164659]),
    (2, 0.002, [0.002832472444305298982387096, 0.4165095059634513740548864, 0.4119015059634513740548864, 0.7330051653341682061056774, 3.749057035780708244329318]),
    (3, 0.0002, [0.0005197503670107512706385389, 0.07529115488697549908038568, 0.07498011488697549908038568, 0.7453222466969032385642532, 1.927620393982779491723471]),
    (3, 0.001, [0.002601466820154236865712364, 0.3857869744348774954019284, 0.3780109744348774954019284, 0.7265867986186118682085887, 4.722082769913897458617356]),
    (3, 0.002, [0.005209777457365608655190064, 0.7949019488697549908038568, 0.7637979488697549908038568, 0.7031120028837095221032894, 8.404117539827794917234711]),
    (4, 0.0002, [0.0008003202561024819527942249, 0.11667456, 0.11556864, 0.7403961569267702165664693, 2.65009472]),
    (4, 0.001, [0.004008032064256514052112417, 0.612864, 0.585216, 0.701903615228921831374651, 8.604368]),
    (4, 0.002, [0.008032257032225031200998432, 1.299456, 1.188864, 0.6536129156132996255880188, 16.843472]),
];

pub const THEOREM_S0_2_MU_0_001_P_256: [f64; 13] = [0.0009434782241906612076310128, 0.2047987529817256870274432, 0.001415219223249988048753884, 0.2059507529817256870274432, 3.001929221791237320304914, 1.795694865000007252106125, 2.33019240263447863753612, 2.352225765269943573343519, 0.9703369140625, 0.009602442989630518602606528, 0.1270604689250859036590328, 0.01502807334259336882666588, 0.1301650279885095943457073];
pub const COROLLARY_S0_2_MU_0_005: [f64; 5] = [0.007096777489614436687677211, 1.075833764908628435137216, 1.047033764908628435137216, 0.7074193350623133798739367, 7.705002589451770610823295];
pub const RHO_MIN_2_005_01_08: f64 = 0.5513988343435986940662469;
pub const RHO_MAX_2_01_125: f64 = 1.72562460986251964319243;
pub const EPS_MIN_APPEND_2_005_12_08: f64 = 0.7331512922452160240254468;
pub const EPS_MAX_APPEND_2_005_12_125: f64 = 0.8773281374238570292810132;
/// window (lam1 = 1.25, lam_s0 = 0.75, s0 = 2, mu = 0.01), s1 = 6, eta = 1/2
pub const SUCCESSIVE_EPS: [f64; 2] = [0.01424783475763400408965275, 2.151667529817256870274432];
