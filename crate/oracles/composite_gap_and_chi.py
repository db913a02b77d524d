import numpy as np
from scipy import optimize
def cpbH(EC,EJ0,ng,flux,nmax):
    c=int(np.floor(ng+0.5)); ns=np.arange(c-nmax,c+nmax+1)
    EJ=EJ0*abs(np.cos(np.pi*flux))
    H=np.diag(4*EC*(ns-ng)**2)-EJ/2*(np.eye(len(ns),k=1)+np.eye(len(ns),k=-1))
    return H, np.diag(ns-ng)
def comp(EC,EJ0,ng,flux,w,lam,nmax,nf):
    Hq,N=cpbH(EC,EJ0,ng,flux,nmax)
    a=np.diag(np.sqrt(np.arange(1,nf+1)),1)
    Ho=w*(a.T@a+0.5*np.eye(nf+1))
    H=np.kron(Hq,np.eye(nf+1))+np.kron(np.eye(len(Hq)),Ho)+lam*np.kron(N,a+a.T)
    return H
P=dict(EC=1.3e9,EJ0=12.7e9,w=1.94e9,lam=160e6)
def dE(flux,ng=0.5,nmax=7):
    Hq,_=cpbH(P['EC'],P['EJ0'],ng,flux,nmax); e=np.linalg.eigvalsh(Hq); return e[1]-e[0]
root=optimize.brentq(lambda f:dE(f)-P['w'],0.3,0.5); print("bare root",repr(root), "other", 1-root)
def gap(f,lam=P['lam'],EC=P['EC']):
    e=np.linalg.eigvalsh(comp(EC,P['EJ0'],0.5,f,P['w'],lam,7,10)); return e[2]-e[1]
r=optimize.minimize_scalar(gap,bounds=(root-0.03,root+0.03),method='bounded',options={'xatol':1e-9})
print("gap",repr(r.fun),"at",repr(r.x))
Hq,N=cpbH(P['EC'],P['EJ0'],0.5,r.x,7); e,v=np.linalg.eigh(Hq); me=v[:,1]@N@v[:,0]
print("pert gap",2*P['lam']*abs(me), "ratio", r.fun/(2*P['lam']*abs(me)))
for EC in [1.1e9,1.3e9,1.5e9]:
  for lam in [40e6,100e6,160e6]:
    rt=optimize.brentq(lambda f:(lambda e:e[1]-e[0])(np.linalg.eigvalsh(cpbH(EC,P['EJ0'],0.5,f,7)[0]))-P['w'],0.3,0.5)
    r=optimize.minimize_scalar(lambda f:gap(f,lam,EC),bounds=(rt-0.03,rt+0.03),method='bounded',options={'xatol':1e-10})
    Hq,N=cpbH(EC,P['EJ0'],0.5,r.x,7); e,v=np.linalg.eigh(Hq); me=abs(v[:,1]@N@v[:,0])
    print(EC,lam,rt,r.x,r.fun,r.fun/(2*lam*me))
# crit 10
for f in [0.0,0.2,root,0.5]:
  for ng in [0,0.5]:
    a=np.linalg.eigvalsh(comp(P['EC'],P['EJ0'],ng,f,P['w'],P['lam'],5,10))[:6]
    b=np.linalg.eigvalsh(comp(P['EC'],P['EJ0'],ng,f,P['w'],P['lam'],7,10))[:6]
    c=np.linalg.eigvalsh(comp(P['EC'],P['EJ0'],ng,f,P['w'],P['lam'],7,12))[:6]
    print("conv",f,ng,max(abs(a-b))/P['EC'],max(abs(b-c))/P['EC'])
# 6x6 hand
print(comp(1.0,0.0,0.0,0.0,0.5,0.1,1,1))
print("=== chi")
def chi_num(EC,EJ0,ng,flux,w,lam,nmax=7,nf=10):
    Hq,N=cpbH(EC,EJ0,ng,flux,nmax); eq,vq=np.linalg.eigh(Hq)
    H=comp(EC,EJ0,ng,flux,w,lam,nmax,nf); e,v=np.linalg.eigh(H)
    def E(j,k):
        b=np.kron(vq[:,j],np.eye(nf+1)[k]); ov=(b@v)**2; i=np.argmax(ov); assert ov[i]>0.5; return e[i]
    return (E(1,1)-E(1,0))-(E(0,1)-E(0,0)), eq[1]-eq[0], abs(vq[:,1]@N@vq[:,0])
EC,EJ0=10e9,4e9
for w in [1e9,1.5e9,2e9,2.5e9,3e9, 5e9,6e9,8e9]:
    lam=20e6
    cn,dE,me=chi_num(EC,EJ0,0.5,0.0,w,lam)
    EJ=EJ0
    cf=lam**2*EJ**2/(dE*(dE**2-w**2))
    print(w,dE,cn,cf,cn/cf, lam*me/abs(dE-w))
print("2x check at lam 40", chi_num(EC,EJ0,0.5,0,2e9,40e6)[0]/chi_num(EC,EJ0,0.5,0,2e9,20e6)[0])
